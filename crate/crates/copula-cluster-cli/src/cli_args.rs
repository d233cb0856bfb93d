//! Shared flag vocabulary: measure and mode names used by every subcommand
//! and by simulation method strings.

use anyhow::{bail, Result};
use clap::ValueEnum;
use copula_cluster::{DissimilaritySpec, LinkageMethod, MeasureKind};

/// Which dependence dissimilarity to estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Beta,
    Footrule,
    Kendall,
    Spearman,
    Ltd,
}

impl MeasureArg {
    /// Resolves to a concrete measure; the tail threshold defaults to
    /// `floor(sqrt(n))` unless overridden.
    pub fn to_kind(self, n: usize, tail_k: Option<usize>) -> MeasureKind {
        match self {
            MeasureArg::Beta => MeasureKind::Beta,
            MeasureArg::Footrule => MeasureKind::Footrule,
            MeasureArg::Kendall => MeasureKind::Kendall,
            MeasureArg::Spearman => MeasureKind::Spearman,
            MeasureArg::Ltd => match tail_k {
                Some(k) => MeasureKind::LowerTail { k },
                None => MeasureKind::lower_tail_default(n),
            },
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            MeasureArg::Beta => "beta",
            MeasureArg::Footrule => "footrule",
            MeasureArg::Kendall => "kendall",
            MeasureArg::Spearman => "spearman",
            MeasureArg::Ltd => "ltd",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "beta" => MeasureArg::Beta,
            "footrule" => MeasureArg::Footrule,
            "kendall" => MeasureArg::Kendall,
            "spearman" => MeasureArg::Spearman,
            "ltd" => MeasureArg::Ltd,
            other => bail!("unknown measure {other:?}"),
        })
    }
}

/// How group dissimilarities are formed: one of the three linkage
/// compositions of the pairwise matrix, or re-estimating the multivariate
/// measure on each candidate union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Single,
    Average,
    Complete,
    Global,
}

impl ModeArg {
    pub fn to_spec(self, kind: MeasureKind) -> DissimilaritySpec {
        match self {
            ModeArg::Single => DissimilaritySpec::Linkage {
                kind,
                method: LinkageMethod::Single,
            },
            ModeArg::Average => DissimilaritySpec::Linkage {
                kind,
                method: LinkageMethod::Average,
            },
            ModeArg::Complete => DissimilaritySpec::Linkage {
                kind,
                method: LinkageMethod::Complete,
            },
            ModeArg::Global => DissimilaritySpec::Global { kind },
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModeArg::Single => "single",
            ModeArg::Average => "average",
            ModeArg::Complete => "complete",
            ModeArg::Global => "global",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "single" => ModeArg::Single,
            "average" => ModeArg::Average,
            "complete" => ModeArg::Complete,
            "global" => ModeArg::Global,
            other => bail!("unknown mode {other:?}"),
        })
    }
}

/// Parses a `"measure-mode"` method string, e.g. `"kendall-average"`.
pub fn parse_method(s: &str) -> Result<(MeasureArg, ModeArg)> {
    let Some((measure, mode)) = s.rsplit_once('-') else {
        bail!("method {s:?} must look like \"measure-mode\", e.g. \"kendall-average\"");
    };
    Ok((MeasureArg::parse(measure)?, ModeArg::parse(mode)?))
}
