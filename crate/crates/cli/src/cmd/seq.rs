use serde_json::json;
use seqforge::seq::{
    assemble_fragments, complement, composition_windows, find_hairpins, parity_stats, reverse_complement,
    HairpinParams,
};

use crate::args::{AssembleArgs, SeqAction};
use crate::config::Config;
use crate::fail::Result;
use crate::input::load;
use crate::report::Report;
use crate::row;

pub fn run(action: &SeqAction, cfg: &Config) -> Result<Report> {
    match action {
        SeqAction::Validate(input) => {
            let loaded = load(input)?;
            let mut text = String::from("id\talphabet\tlength\tambiguous\n");
            let mut rows = Vec::new();
            for s in &loaded.seqs {
                row!(text, s.id(), s.alphabet().name(), s.len(), s.ambiguous_count());
                rows.push(json!({
                    "id": s.id(),
                    "alphabet": s.alphabet().name(),
                    "length": s.len(),
                    "ambiguous": s.ambiguous_count(),
                }));
            }
            Report::new(text, rows)
        }
        SeqAction::Complement(input) | SeqAction::Revcomp(input) => {
            let loaded = load(input)?;
            let f = if matches!(action, SeqAction::Complement(_)) { complement } else { reverse_complement };
            let out = loaded.seqs.iter().map(f).collect::<std::result::Result<Vec<_>, _>>()?;
            Report::new(loaded.render(out.clone())?, out)
        }
        SeqAction::Parity(input) => {
            let loaded = load(input)?;
            let mut text = String::from("id\tA\tC\tG\tT\tdeviation_at\tdeviation_gc\n");
            let mut rows = Vec::new();
            for s in &loaded.seqs {
                let p = parity_stats(s)?;
                row!(text, s.id(), p.a, p.c, p.g, p.t, format!("{:.4}", p.deviation_at), format!("{:.4}", p.deviation_gc));
                rows.push(json!({ "id": s.id(), "stats": p }));
            }
            Report::new(text, rows)
        }
        SeqAction::Composition(a) => {
            let loaded = load(&a.seq)?;
            let window = cfg.or(a.window, "window", 100)?;
            let step = cfg.or(a.step, "step", window)?;
            let partial = cfg.flag(a.partial, "partial")?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for s in &loaded.seqs {
                let rep = composition_windows(s, window, step, partial)?;
                let symbols: Vec<char> = rep.totals.keys().copied().collect();
                let header: Vec<String> = symbols.iter().map(char::to_string).collect();
                row!(text, "id", "start", "end", header.join("\t"), "gc");
                for ((offset, counts), gc) in rep.offsets.iter().zip(&rep.windows).zip(rep.window_gc_fractions()) {
                    let n: usize = counts.values().sum();
                    let cells: Vec<String> =
                        symbols.iter().map(|c| counts.get(c).copied().unwrap_or(0).to_string()).collect();
                    row!(text, s.id(), offset + 1, offset + n, cells.join("\t"), format!("{gc:.4}"));
                }
                rows.push(json!({ "id": s.id(), "composition": rep }));
            }
            Report::new(text, rows)
        }
        SeqAction::Hairpin(a) => {
            let loaded = load(&a.seq)?;
            let d = HairpinParams::default();
            let params = HairpinParams {
                min_stem: cfg.or(a.min_stem, "min-stem", d.min_stem)?,
                min_loop: cfg.or(a.min_loop, "min-loop", d.min_loop)?,
                max_loop: cfg.or(a.max_loop, "max-loop", d.max_loop)?,
            };
            let mut text = String::from("id\tstart\tend\tstem\tloop_start\tloop_end\n");
            let mut rows = Vec::new();
            for s in &loaded.seqs {
                for h in find_hairpins(s, params)? {
                    row!(text, s.id(), h.start() + 1, h.end(), h.stem_length, h.loop_span.start + 1, h.loop_span.end);
                    rows.push(json!({ "id": s.id(), "hairpin": h }));
                }
            }
            let none = rows.is_empty();
            Ok(Report::new(text, rows)?.empty_if(none, "no hairpins found"))
        }
    }
}

pub fn assemble(a: &AssembleArgs, cfg: &Config) -> Result<Report> {
    let loaded = load(&a.seq)?;
    let min_overlap = cfg.or(a.min_overlap, "min-overlap", 1)?;
    let asm = assemble_fragments(&loaded.seqs, min_overlap)?;
    let contigs = asm
        .contigs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let members: Vec<&str> = c.placements.iter().map(|p| p.id.as_str()).collect();
            c.sequence
                .clone()
                .with_id(&format!("contig{}", i + 1))?
                .with_description(&format!("fragments={}", members.join(",")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let text = seqforge::formats::render_fasta(&seqforge::formats::FastaDoc::new(contigs)?, 60);
    let split = asm.contigs.len() > 1;
    Ok(Report::new(text, &asm)?.empty_if(split, "fragments did not assemble into a single contig"))
}
