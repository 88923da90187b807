use serde_json::json;
use seqforge::align::{align, ktup_search, render_blast, AlignMode, SearchParams, DEFAULT_WIDTH};
use seqforge::formats::{parse_prosite, scan_motif};
use seqforge::seq::{Alphabet, Sequence};

use super::scheme;
use crate::args::{AlignArgs, ModeArg, ScanArgs, SearchArgs};
use crate::config::Config;
use crate::fail::{Failure, Result};
use crate::input::{load_as, load_path};
use crate::report::Report;
use crate::row;

pub fn align_cmd(a: &AlignArgs, cfg: &Config) -> Result<Report> {
    let lenient = cfg.flag(a.lenient, "lenient")?;
    let q = load_path(&a.a, None, lenient)?.first();
    let s = load_path(&a.b, Some(q.alphabet()), lenient)?.first();
    let mode = match a.mode {
        Some(ModeArg::Global) => AlignMode::Global,
        Some(ModeArg::Local) => AlignMode::Local,
        None => match cfg.get::<String>("mode")?.as_deref() {
            None | Some("global") => AlignMode::Global,
            Some("local") => AlignMode::Local,
            Some(other) => return Err(Failure::usage(format!("config key mode: unknown mode {other:?}"))),
        },
    };
    let width = cfg.or(a.width, "width", DEFAULT_WIDTH)?;
    if width == 0 {
        return Err(Failure::usage("--width must be positive"));
    }
    let scheme = scheme(&a.scoring, cfg, q.alphabet())?;
    let al = align(&q, &s, &scheme, mode)?;
    Report::new(render_blast(&al, q.id(), s.id(), width), &al)
}

fn word_size(alphabet: Alphabet) -> usize {
    if alphabet == Alphabet::Protein {
        3
    } else {
        8
    }
}

pub fn search(a: &SearchArgs, cfg: &Config) -> Result<Report> {
    let lenient = cfg.flag(a.lenient, "lenient")?;
    let q: Sequence = load_path(&a.query, None, lenient)?.first();
    let db = load_path(&a.db, Some(q.alphabet()), lenient)?.seqs;
    let scheme = scheme(&a.scoring, cfg, q.alphabet())?;
    let k = cfg.or(a.k, "k", word_size(q.alphabet()).min(q.len()))?;
    let threshold = cfg.or(a.threshold, "threshold", 0)?;
    let mut params = SearchParams::new(k, threshold, &scheme);
    if let Some(d) = cfg.pick(a.dropoff, "dropoff")? {
        params.dropoff = Some(d);
    }
    let mut hits = ktup_search(&q, &db, &scheme, params)?;
    if let Some(max) = cfg.pick(a.max_hits, "max-hits")? {
        hits.truncate(max);
    }
    let width = cfg.or(a.width, "width", DEFAULT_WIDTH)?;
    let mut text = String::from(
        "rank\tsubject\tscore\tungapped\tquery_start\tquery_end\tsubject_start\tsubject_end\tidentities\tlength\n",
    );
    for (i, h) in hits.iter().enumerate() {
        let al = &h.hsp.alignment;
        row!(
            text,
            i + 1,
            h.id,
            h.hsp.score(),
            h.hsp.ungapped_score,
            al.query_start,
            al.query_end,
            al.subject_start,
            al.subject_end,
            al.identities,
            al.len()
        );
    }
    if cfg.flag(a.alignments, "alignments")? {
        for h in &hits {
            text.push('\n');
            text.push_str(&render_blast(&h.hsp.alignment, q.id(), &h.id, width));
        }
    }
    let none = hits.is_empty();
    Ok(Report::new(text, &hits)?.empty_if(none, "no hits"))
}

pub fn scan(a: &ScanArgs) -> Result<Report> {
    let pattern = parse_prosite(&a.pattern)?;
    let loaded = load_as(&a.seq, Some(Alphabet::Protein))?;
    let mut text = String::from("id\tstart\tend\tmatch\n");
    let mut rows = Vec::new();
    for s in &loaded.seqs {
        for r in scan_motif(&pattern, s)? {
            let hit = &s.residues()[r.clone()];
            row!(text, s.id(), r.start + 1, r.end, hit);
            rows.push(json!({ "id": s.id(), "start": r.start + 1, "end": r.end, "match": hit }));
        }
    }
    let none = rows.is_empty();
    Ok(Report::new(text, json!({ "pattern": pattern.canonical(), "matches": rows }))?.empty_if(none, "no motif matches"))
}
