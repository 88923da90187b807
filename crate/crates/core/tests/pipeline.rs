use seqforge::align::{ktup_search, ScoringScheme, SearchParams};
use seqforge::formats::{parse_fasta_str, parse_genbank_str, parse_prosite, render_genbank, scan_motif, FastaOptions, GenBankRecord};
use seqforge::genes::{find_orfs, OrfParams};
use seqforge::pmf::{digest, identify, peptide_mass, DigestRule, Fingerprint, MassTable, Tolerance};
use seqforge::seq::{Alphabet, Sequence};
use seqforge::store::{build_neighbors, Record, Store};
use seqforge::structure::{consensus, predict, HydrophobicSet, SsPrediction};

const GENE: &str = "CCATGGCTCATTGGACCCTGGCTGGTCAGCATGCAGACCTGGAACGCGAAGATCGTTAAATAGGG";

#[test]
fn gene_to_motif() {
    let dna = Sequence::new("g1", "toy gene", Alphabet::Dna, GENE).unwrap();
    let orfs = find_orfs(&dna, OrfParams { min_peptide: 10, ..OrfParams::default() }).unwrap();
    let orf = orfs.iter().find(|o| o.frame.value() == 3).expect("frame +3 ORF");
    assert_eq!(orf.peptide.residues(), "MAHWTLAGQHADLEREDR");
    let motif = parse_prosite("H-W-x-[LIVM]-x-G").unwrap();
    assert_eq!(scan_motif(&motif, &orf.peptide).unwrap(), vec![2..8]);
}

#[test]
fn genbank_into_store_and_query() {
    let origin = Sequence::parse(GENE, Alphabet::Dna).unwrap();
    let gb = GenBankRecord::new("TOYGENE", "X00001", "Toy heat-shock gene", "Homo sapiens", origin).unwrap();
    let parsed = parse_genbank_str(&render_genbank(std::slice::from_ref(&gb))).unwrap();
    assert_eq!(parsed.len(), 1);

    let dir = tempfile::tempdir().unwrap();
    let mut store = Store::open(dir.path()).unwrap();
    let fasta = format!(">X00002 heat shock copy\n{GENE}\n>X00003 unrelated\n{}\n", "ACGT".repeat(20));
    let doc = parse_fasta_str(&fasta, FastaOptions::default()).unwrap();
    let mut records: Vec<Record> = parsed.iter().map(Record::from).collect();
    records.extend(seqforge::store::records_from_fasta(&doc));
    assert_eq!(store.ingest(records).unwrap(), 3);

    assert_eq!(store.query("heatshock").unwrap(), ["X00001"]);
    assert_eq!(store.query("heat AND shock").unwrap(), ["X00001", "X00002"]);
    assert_eq!(store.query("sapiens [ti]").unwrap(), Vec::<String>::new());
    assert_eq!(store.query("homo").unwrap(), ["X00001"]);

    let links = build_neighbors(&store, 20, None);
    let pairs: Vec<(&str, &str)> = links.iter().map(|l| (l.from.as_str(), l.to.as_str())).collect();
    assert_eq!(pairs, [("X00001", "X00002"), ("X00002", "X00001")]);

    drop(store);
    let reopened = Store::open(dir.path()).unwrap();
    assert_eq!(reopened.len(), 3);
    assert_eq!(reopened.get("X00002").unwrap().sequence.as_ref().unwrap().residues(), GENE);
}

#[test]
fn search_finds_embedded_gene() {
    let query = Sequence::new("q", "", Alphabet::Dna, &GENE[2..50]).unwrap();
    let db: Vec<Sequence> = [
        ("noise", "ACGT".repeat(30)),
        ("carrier", format!("{}{GENE}{}", "T".repeat(40), "A".repeat(40))),
    ]
    .iter()
    .map(|(id, r)| Sequence::new(id, "", Alphabet::Dna, r).unwrap())
    .collect();
    let scheme = ScoringScheme::nucleotide();
    let hits = ktup_search(&query, &db, &scheme, SearchParams::new(8, 10, &scheme)).unwrap();
    assert_eq!(hits[0].id, "carrier");
    assert_eq!(hits[0].hsp.score(), 48);
    assert_eq!(hits[0].hsp.alignment.subject_start, 43);
}

#[test]
fn digest_masses_identify_protein() {
    let protein = Sequence::new("P1", "", Alphabet::Protein, "MAHWTLAGQHADLEREDKPLLKGGSAWR").unwrap();
    let decoy = Sequence::new("D1", "", Alphabet::Protein, "GGGGSGGGGSGGGGSPPPPK").unwrap();
    let table = MassTable::monoisotopic();
    let rule = DigestRule::trypsin();
    let peptides = digest(&protein, &rule).unwrap();
    let names: Vec<&str> = peptides.iter().map(|p| p.residues()).collect();
    assert_eq!(names, ["MAHWTLAGQHADLER", "EDKPLLK", "GGSAWR"]);
    let peaks: Vec<f64> = peptides.iter().map(|p| peptide_mass(p, &table).unwrap()).collect();
    let fp = Fingerprint::new(peaks, Tolerance::Ppm(5.0)).unwrap();
    let db = vec![("D1".to_string(), decoy), ("P1".to_string(), protein)];
    let ranked = identify(&fp, &db, &rule, &table).unwrap();
    assert_eq!(ranked[0].accession, "P1");
    assert_eq!((ranked[0].matched, ranked[0].total), (3, 3));
}

#[test]
fn predictions_combine() {
    let s = Sequence::new("h", "", Alphabet::Protein, "MLKKLLEELLKKLLEELLKKGS").unwrap();
    let a = predict(&s, &HydrophobicSet::default()).unwrap();
    let b = SsPrediction::certain(&"C".repeat(s.len()), "flat").unwrap();
    let merged = consensus(&[a.clone(), b.clone()], &[2.0, 1.0]).unwrap();
    assert_eq!(merged.labels, a.labels);
    let tied = consensus(&[a.clone(), b], &[1.0, 1.0]).unwrap();
    assert!(tied.labels.chars().zip(a.labels.chars()).all(|(t, x)| x == 'C' || t == 'C'));
    let back = SsPrediction::from_tsv(&merged.to_tsv(&s).unwrap(), "consensus").unwrap();
    assert_eq!(back.labels, merged.labels);
}
