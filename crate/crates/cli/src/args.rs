use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Sequence analysis toolkit: sequences, genes, alignment, motifs,
/// secondary structure, mass fingerprints, a local databank and trees.
#[derive(Debug, Parser)]
#[command(name = "seqforge", version, propagate_version = true)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Read `key = value` defaults from this file; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write results to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Exit with status 3 when a command finds nothing.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-sequence utilities.
    Seq(SeqCmd),
    /// Greedy assembly of overlapping fragments into contigs.
    Assemble(AssembleArgs),
    /// Translate nucleotide sequences with the standard genetic code.
    Translate(TranslateArgs),
    /// Find open reading frames in all six frames.
    Orf(OrfArgs),
    /// List GT...AG intron candidates.
    Splice(SpliceArgs),
    /// Align the first sequence of two inputs.
    Align(AlignArgs),
    /// k-tuple search of a query against a FASTA database.
    Search(SearchArgs),
    /// Scan protein sequences with a PROSITE pattern.
    Scan(ScanArgs),
    /// Periodicity-based secondary structure prediction.
    Predict2s(PredictArgs),
    /// Weighted consensus of secondary structure predictions.
    Consensus(ConsensusArgs),
    /// Peptide mass fingerprinting.
    Pmf(PmfCmd),
    /// Local databank.
    Db(DbCmd),
    /// Distance matrices and trees.
    Tree(TreeCmd),
}

/// Input handling shared by sequence commands.
#[derive(Debug, Args)]
pub struct SeqInput {
    /// FASTA or raw sequence file; `-` or absent reads standard input.
    #[arg(value_name = "INPUT")]
    pub input: Option<PathBuf>,
    /// Force an alphabet instead of detecting it.
    #[arg(long, value_enum)]
    pub alphabet: Option<AlphabetArg>,
    /// Accept IUPAC ambiguity codes.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlphabetArg {
    Dna,
    Rna,
    Protein,
}

#[derive(Debug, Args)]
pub struct SeqCmd {
    #[command(subcommand)]
    pub action: SeqAction,
}

#[derive(Debug, Subcommand)]
pub enum SeqAction {
    /// Check residues and report alphabet and length.
    Validate(SeqInput),
    /// Base-wise complement.
    Complement(SeqInput),
    /// Reverse complement.
    Revcomp(SeqInput),
    /// Base counts and single-strand parity deviations.
    Parity(SeqInput),
    /// Windowed symbol composition.
    Composition(CompositionArgs),
    /// Stem-loop search.
    Hairpin(HairpinArgs),
}

#[derive(Debug, Args)]
pub struct CompositionArgs {
    #[command(flatten)]
    pub seq: SeqInput,
    /// Window length [default: 100].
    #[arg(long)]
    pub window: Option<usize>,
    /// Distance between window starts [default: window].
    #[arg(long)]
    pub step: Option<usize>,
    /// Report a trailing short window.
    #[arg(long)]
    pub partial: bool,
}

#[derive(Debug, Args)]
pub struct HairpinArgs {
    #[command(flatten)]
    pub seq: SeqInput,
    /// Minimum stem length [default: 4].
    #[arg(long)]
    pub min_stem: Option<usize>,
    /// Minimum loop length [default: 3].
    #[arg(long)]
    pub min_loop: Option<usize>,
    /// Maximum loop length [default: 8].
    #[arg(long)]
    pub max_loop: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AssembleArgs {
    #[command(flatten)]
    pub seq: SeqInput,
    /// Minimum overlap for a merge [default: 1].
    #[arg(long)]
    pub min_overlap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[command(flatten)]
    pub seq: SeqInput,
    /// Reading frame: 1, 2, 3, -1, -2, -3 or `all` [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    pub frame: Option<String>,
    /// Stop at the first stop codon instead of writing `*`.
    #[arg(long)]
    pub halt: bool,
}

#[derive(Debug, Args)]
pub struct OrfArgs {
    #[command(flatten)]
    pub seq: SeqInput,
    /// Minimum peptide length, stop excluded [default: 30].
    #[arg(long)]
    pub min_len: Option<usize>,
    /// Also report ATGs inside an ORF of the same frame.
    #[arg(long)]
    pub nested: bool,
    /// Report ORFs that run off the end without a stop.
    #[arg(long)]
    pub open_ended: bool,
}

#[derive(Debug, Args)]
pub struct SpliceArgs {
    #[command(flatten)]
    pub seq: SeqInput,
    /// Minimum intron length [default: 20].
    #[arg(long)]
    pub min_intron: Option<usize>,
    /// Maximum intron length [default: 10000].
    #[arg(long)]
    pub max_intron: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Global,
    Local,
}

#[derive(Debug, Args)]
pub struct ScoringArgs {
    /// Score for identical residues.
    #[arg(long = "match", allow_negative_numbers = true)]
    pub match_score: Option<i32>,
    /// Score for unrelated residues.
    #[arg(long, allow_negative_numbers = true)]
    pub mismatch: Option<i32>,
    /// Score for residues in the same similarity group (protein only).
    #[arg(long, allow_negative_numbers = true)]
    pub similar: Option<i32>,
    /// Penalty per gap symbol.
    #[arg(long, allow_negative_numbers = true)]
    pub gap: Option<i32>,
    /// Affine gap opening penalty; requires --gap-extend.
    #[arg(long, allow_negative_numbers = true, requires = "gap_extend")]
    pub gap_open: Option<i32>,
    /// Affine gap extension penalty.
    #[arg(long, allow_negative_numbers = true, requires = "gap_open")]
    pub gap_extend: Option<i32>,
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    /// First (query) sequence file.
    pub a: PathBuf,
    /// Second (subject) sequence file.
    pub b: PathBuf,
    /// Global or local alignment [default: global].
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Columns per block [default: 60].
    #[arg(long)]
    pub width: Option<usize>,
    #[command(flatten)]
    pub scoring: ScoringArgs,
    /// Accept IUPAC ambiguity codes.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Query sequence file (first entry is used).
    pub query: PathBuf,
    /// FASTA database.
    pub db: PathBuf,
    /// Word size [default: 3 protein, 8 nucleotide].
    #[arg(short, long)]
    pub k: Option<usize>,
    /// Minimum ungapped segment score [default: 0].
    #[arg(long)]
    pub threshold: Option<i32>,
    /// X-drop for ungapped extension [default: 5 x match].
    #[arg(long)]
    pub dropoff: Option<i32>,
    /// Report at most this many hits.
    #[arg(long)]
    pub max_hits: Option<usize>,
    /// Append rendered alignments after the table.
    #[arg(long)]
    pub alignments: bool,
    /// Columns per alignment block [default: 60].
    #[arg(long)]
    pub width: Option<usize>,
    #[command(flatten)]
    pub scoring: ScoringArgs,
    /// Accept IUPAC ambiguity codes.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// PROSITE pattern such as `C-x(2,4)-C-x(3)-[LIVMFYWC]`.
    pub pattern: String,
    #[command(flatten)]
    pub seq: SeqInput,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub seq: SeqInput,
    /// Hydrophobic residues [default: LIVMFWYC].
    #[arg(long)]
    pub hydrophobic: Option<String>,
    /// Print a hydropathy profile with this odd window instead.
    #[arg(long, value_name = "WINDOW")]
    pub hydropathy: Option<usize>,
    /// Hydropathy scale file of `residue<TAB>value` lines [default: Kyte-Doolittle].
    #[arg(long, value_name = "FILE")]
    pub scale: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConsensusArgs {
    /// Prediction files (`index<TAB>residue<TAB>label<TAB>confidence`).
    #[arg(required = true, num_args = 1..)]
    pub predictions: Vec<PathBuf>,
    /// Comma-separated weights, one per file [default: all 1].
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct PmfCmd {
    #[command(subcommand)]
    pub action: PmfAction,
}

#[derive(Debug, Args)]
pub struct DigestOpts {
    /// Enzyme name from the rules file [default: trypsin].
    #[arg(long)]
    pub rule: Option<String>,
    /// Rules file of `name<TAB>cleave-after<TAB>blocked-by-next` lines.
    #[arg(long, value_name = "FILE")]
    pub rules_file: Option<PathBuf>,
    /// Allowed missed cleavages [default: 0].
    #[arg(long)]
    pub missed: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MassOpts {
    /// Disable the carbamidomethyl-C fixed modification.
    #[arg(long)]
    pub no_carbamidomethyl: bool,
    /// Mass table file of `residue<TAB>mass` lines plus `H2O<TAB>mass`.
    #[arg(long, value_name = "FILE")]
    pub masses: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PmfAction {
    /// In-silico digest with peptide masses.
    Digest {
        #[command(flatten)]
        seq: SeqInput,
        #[command(flatten)]
        digest: DigestOpts,
        #[command(flatten)]
        mass: MassOpts,
    },
    /// Monoisotopic mass of each peptide.
    Mass {
        #[command(flatten)]
        seq: SeqInput,
        #[command(flatten)]
        mass: MassOpts,
    },
    /// Rank database proteins against a peak list.
    Identify {
        /// Peak list, one mass per line.
        peaks: PathBuf,
        /// Protein FASTA database.
        db: PathBuf,
        /// Match tolerance [default: 0.5].
        #[arg(long)]
        tolerance: Option<f64>,
        /// Read the tolerance as parts per million instead of Da.
        #[arg(long)]
        ppm: bool,
        #[command(flatten)]
        digest: DigestOpts,
        #[command(flatten)]
        mass: MassOpts,
    },
}

#[derive(Debug, Args)]
pub struct DbCmd {
    /// Data directory [env: SEQFORGE_DATA].
    #[arg(long, global = true, value_name = "DIR")]
    pub data: Option<PathBuf>,
    #[command(subcommand)]
    pub action: DbAction,
}

#[derive(Debug, Subcommand)]
pub enum DbAction {
    /// Add FASTA, GenBank or JSON-lines records.
    Ingest {
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
    },
    /// Boolean field query; prints matching accessions.
    Query {
        /// e.g. `dna [mh] AND crick [au] AND 1993 [dp]`.
        query: String,
    },
    /// Print stored similarity links, optionally recomputing them first.
    Neighbors {
        /// Only links from this accession.
        accession: Option<String>,
        /// Recompute links by all-vs-all k-tuple search and save them.
        #[arg(long)]
        build: bool,
        /// Minimum alignment score for a link [default: 30].
        #[arg(long)]
        threshold: Option<i32>,
    },
    /// Print one record as JSON.
    Get { accession: String },
}

#[derive(Debug, Args)]
pub struct TreeCmd {
    #[command(subcommand)]
    pub action: TreeAction,
}

#[derive(Debug, Subcommand)]
pub enum TreeAction {
    /// Pairwise distance matrix (1 - identity of global alignments) as TSV.
    Distmat {
        #[command(flatten)]
        seq: SeqInput,
        #[command(flatten)]
        scoring: ScoringArgs,
    },
    /// UPGMA tree in Newick form from a TSV matrix or a FASTA file.
    Upgma {
        #[command(flatten)]
        seq: SeqInput,
        #[command(flatten)]
        scoring: ScoringArgs,
    },
}
