use serde_json::json;
use seqforge::formats::render_entry;
use seqforge::genes::{find_orfs, six_frame, splice_candidates, translate, Frame, OrfParams, SpliceParams, StopPolicy};
use seqforge::seq::{reverse_complement, Sequence};

use crate::args::{OrfArgs, SpliceArgs, TranslateArgs};
use crate::config::Config;
use crate::fail::{Failure, Result};
use crate::input::load;
use crate::report::Report;
use crate::row;

fn translate_frame(s: &Sequence, frame: Frame, policy: StopPolicy) -> Result<Sequence> {
    let strand = if frame.is_reverse() { reverse_complement(s)? } else { s.clone() };
    Ok(translate(&strand, frame.offset(), policy)?)
}

pub fn translate_cmd(a: &TranslateArgs, cfg: &Config) -> Result<Report> {
    let loaded = load(&a.seq)?;
    let frame_arg = cfg.or(a.frame.clone(), "frame", "1".to_string())?;
    let policy = if cfg.flag(a.halt, "halt")? { StopPolicy::HaltAtStop } else { StopPolicy::RunThrough };
    let frames: Option<Frame> = if frame_arg == "all" {
        None
    } else {
        Some(frame_arg.parse().map_err(|_| Failure::usage(format!("invalid frame {frame_arg:?}")))?)
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for s in &loaded.seqs {
        let peptides: Vec<(Frame, Sequence)> = match frames {
            Some(f) => vec![(f, translate_frame(s, f, policy)?)],
            None if policy == StopPolicy::RunThrough => six_frame(s)?.into_iter().collect(),
            None => Frame::ALL
                .iter()
                .filter_map(|&f| translate_frame(s, f, policy).ok().map(|p| (f, p)))
                .collect(),
        };
        for (f, p) in peptides {
            match (loaded.raw, frames.is_some()) {
                (true, true) => row!(text, p.residues()),
                (true, false) => row!(text, f, p.residues()),
                (false, _) => {
                    let named = p.clone().with_description(&format!("frame={f}"))?;
                    render_entry(&mut text, &named, 60);
                }
            }
            rows.push(json!({ "id": s.id(), "frame": f.to_string(), "peptide": p.residues() }));
        }
    }
    Report::new(text, rows)
}

pub fn orf(a: &OrfArgs, cfg: &Config) -> Result<Report> {
    let loaded = load(&a.seq)?;
    let params = OrfParams {
        min_peptide: cfg.or(a.min_len, "min-len", OrfParams::default().min_peptide)?,
        nested: cfg.flag(a.nested, "nested")?,
        open_ended: cfg.flag(a.open_ended, "open-ended")?,
    };
    let mut text = String::from("id\tframe\tstart\tend\tlength\tstop\tpeptide\n");
    let mut rows = Vec::new();
    for s in &loaded.seqs {
        for o in find_orfs(s, params)? {
            row!(text, s.id(), o.frame, o.range.start + 1, o.range.end, o.peptide.len(), o.has_stop, o.peptide.residues());
            rows.push(json!({ "id": s.id(), "orf": o }));
        }
    }
    let none = rows.is_empty();
    Ok(Report::new(text, rows)?.empty_if(none, "no open reading frames found"))
}

pub fn splice(a: &SpliceArgs, cfg: &Config) -> Result<Report> {
    let loaded = load(&a.seq)?;
    let d = SpliceParams::default();
    let params = SpliceParams {
        min_intron: cfg.or(a.min_intron, "min-intron", d.min_intron)?,
        max_intron: cfg.or(a.max_intron, "max-intron", d.max_intron)?,
    };
    let mut text = String::from("id\tdonor\tacceptor\tspan\n");
    let mut rows = Vec::new();
    for s in &loaded.seqs {
        for c in splice_candidates(s, params)? {
            row!(text, s.id(), c.donor + 1, c.acceptor + 2, c.span);
            rows.push(json!({ "id": s.id(), "candidate": c }));
        }
    }
    let none = rows.is_empty();
    Ok(Report::new(text, rows)?.empty_if(none, "no splice candidates found"))
}
