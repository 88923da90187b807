pub mod align;
pub mod db;
pub mod genes;
pub mod pmf;
pub mod seq;
pub mod structure;
pub mod tree;

use seqforge::align::{AffineGap, ScoringScheme};
use seqforge::seq::Alphabet;

use crate::args::ScoringArgs;
use crate::config::Config;
use crate::fail::Result;

/// Alphabet defaults with flag and config overrides applied.
pub fn scheme(args: &ScoringArgs, cfg: &Config, alphabet: Alphabet) -> Result<ScoringScheme> {
    let base = ScoringScheme::for_alphabet(alphabet);
    let m = cfg.or(args.match_score, "match", base.match_score())?;
    let mm = cfg.or(args.mismatch, "mismatch", base.mismatch())?;
    let gap = cfg.or(args.gap, "gap", base.gap())?;
    let mut scheme = ScoringScheme::new(m, mm, gap)?;
    if !base.groups().is_empty() {
        let similar = cfg.or(args.similar, "similar", base.similar_score())?;
        scheme = scheme.with_groups(base.groups(), similar)?;
    }
    let open = cfg.pick(args.gap_open, "gap-open")?;
    let extend = cfg.pick(args.gap_extend, "gap-extend")?;
    match (open, extend) {
        (Some(open), Some(extend)) => scheme = scheme.with_affine(AffineGap { open, extend })?,
        (None, None) => {}
        _ => return Err(crate::fail::Failure::usage("--gap-open and --gap-extend go together")),
    }
    Ok(scheme)
}
