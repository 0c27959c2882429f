//! Command-line flags and the serialized run configuration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use weylchar_core::charcalc::DEFAULT_ORACLE_CAP;
use weylchar_core::spectral::DEFAULT_WORD_CAP;
use weylchar_core::weylgroup::DEFAULT_WEYL_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Minimal,
    Maximal,
    FullOrbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Roots,
    Weyl,
    Dim,
    Char,
    Sweep,
    Certificate,
    Spectral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsConfig {
    pub weyl: u64,
    pub oracle_dim: u64,
    pub words: u64,
}

/// Everything needed to reproduce a run; embedded in every output document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: Command,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<Route>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u64>,
    #[serde(default)]
    pub plot_data: bool,
    #[serde(default)]
    pub order_only: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub format: Format,
    pub caps: CapsConfig,
}

#[derive(Parser, Debug)]
#[command(
    name = "weylchar",
    version,
    about = "Characters of compact simple Lie groups at regular and singular torus elements"
)]
pub struct Cli {
    /// Worker threads; affects wall time only.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Largest Weyl-group order to enumerate.
    #[arg(long, global = true, env = "WEYLCHAR_CAP_WEYL")]
    pub cap_weyl: Option<u64>,

    /// Largest dimension for the weight-multiplicity oracle.
    #[arg(long, global = true)]
    pub cap_oracle: Option<u64>,

    /// Largest number of words enumerated for an exact moment.
    #[arg(long, global = true)]
    pub cap_words: Option<u64>,

    /// Re-run a configuration (a bare RunConfig or a full output document).
    #[arg(long)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Args, Debug)]
pub struct GroupArg {
    /// Root system such as `A2`, `G2`, or a product `A1xA1`.
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct WeightArg {
    /// Fundamental-weight coordinates `1,1`, or `ambient:1/2,-1/2`; `;` between factors.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
}

#[derive(Args, Debug)]
pub struct PointArg {
    /// Torus point, e.g. `pi/5:pi/5:-2pi/5`; `;` between factors.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Simple and positive roots, Cartan matrix, Weyl vector.
    Roots(GroupArg),
    /// Weyl-group order and length distribution.
    Weyl {
        #[command(flatten)]
        group: GroupArg,
        /// Report the order from the product formula without enumerating.
        #[arg(long)]
        order: bool,
    },
    /// Dimension of an irreducible representation.
    Dim {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// Character value at a torus point.
    Char {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        weight: WeightArg,
        #[command(flatten)]
        point: PointArg,
        /// Coset transversal used at singular points.
        #[arg(long, value_enum)]
        route: Option<Route>,
    },
    /// Normalized characters along k * weight, k = 1..k_max, with a decay fit.
    Sweep {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        weight: WeightArg,
        #[command(flatten)]
        point: PointArg,
        #[arg(long, default_value_t = 20)]
        k_max: u64,
        /// Emit (ln k, ln ratio) pairs.
        #[arg(long)]
        plot_data: bool,
    },
    /// Root whose dimension factor diverges along k * weight.
    Certificate {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        weight: WeightArg,
        #[command(flatten)]
        point: PointArg,
        #[arg(long, default_value_t = 10)]
        k_max: u64,
    },
    /// Spectral moments of a generator average against Kesten-McKay.
    Spectral {
        #[arg(long, default_value = "A1")]
        group: String,
        /// SU(2) spin; shorthand for `--weight 2l`.
        #[arg(long, conflicts_with = "weight")]
        l: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        /// Generator-set JSON file; defaults to the built-in free pair in SU(2).
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = 8)]
        moments: usize,
        /// Monte Carlo samples for moments beyond the word cap.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

impl Cli {
    /// Resolved configuration for a subcommand given on the command line.
    pub fn to_config(&self, sub: &Sub) -> weylchar_core::Result<RunConfig> {
        let caps = CapsConfig {
            weyl: self.cap_weyl.unwrap_or(DEFAULT_WEYL_CAP as u64),
            oracle_dim: self.cap_oracle.unwrap_or(DEFAULT_ORACLE_CAP),
            words: self.cap_words.unwrap_or(DEFAULT_WORD_CAP),
        };
        let mut c = RunConfig {
            subcommand: Command::Roots,
            group: String::new(),
            weight: None,
            point: None,
            route: None,
            k_max: None,
            plot_data: false,
            order_only: false,
            moments: None,
            gens: None,
            samples: None,
            seed: None,
            format: self.format.unwrap_or(Format::Json),
            caps,
        };
        match sub {
            Sub::Roots(g) => {
                c.group = g.group.clone();
            }
            Sub::Weyl { group, order } => {
                c.subcommand = Command::Weyl;
                c.group = group.group.clone();
                c.order_only = *order;
            }
            Sub::Dim { group, weight } => {
                c.subcommand = Command::Dim;
                c.group = group.group.clone();
                c.weight = Some(weight.weight.clone());
            }
            Sub::Char {
                group,
                weight,
                point,
                route,
            } => {
                c.subcommand = Command::Char;
                c.group = group.group.clone();
                c.weight = Some(weight.weight.clone());
                c.point = Some(point.point.clone());
                c.route = *route;
            }
            Sub::Sweep {
                group,
                weight,
                point,
                k_max,
                plot_data,
            } => {
                c.subcommand = Command::Sweep;
                c.group = group.group.clone();
                c.weight = Some(weight.weight.clone());
                c.point = Some(point.point.clone());
                c.k_max = Some(*k_max);
                c.plot_data = *plot_data;
            }
            Sub::Certificate {
                group,
                weight,
                point,
                k_max,
            } => {
                c.subcommand = Command::Certificate;
                c.group = group.group.clone();
                c.weight = Some(weight.weight.clone());
                c.point = Some(point.point.clone());
                c.k_max = Some(*k_max);
            }
            Sub::Spectral {
                group,
                l,
                weight,
                gens,
                moments,
                samples,
                seed,
            } => {
                c.subcommand = Command::Spectral;
                c.group = group.clone();
                c.weight = match (l, weight) {
                    (Some(l), _) => Some(crate::parse::spin_to_label(l)?.to_string()),
                    (None, w) => w.clone(),
                };
                c.gens = gens.clone();
                c.moments = Some(*moments);
                c.samples = *samples;
                c.seed = *seed;
            }
        }
        c.group = crate::parse::canonical_group(&crate::parse::parse_group(&c.group)?);
        Ok(c)
    }
}
