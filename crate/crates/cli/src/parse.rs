//! Grammars for groups, weights and torus points.

use weylchar_core::exact::{parse_rational, Q};
use weylchar_core::{Error, Result, RootSystem, TorusPoint, WeightVec};

/// `A2`, or a product such as `A1xA1`.
pub fn parse_group(s: &str) -> Result<Vec<RootSystem>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("group", "empty group"));
    }
    s.split(['x', '×'])
        .map(|f| {
            let spec = f.trim().parse().map_err(|e: Error| relabel(e, "group"))?;
            RootSystem::new(spec)
        })
        .collect()
}

pub fn canonical_group(factors: &[RootSystem]) -> String {
    factors
        .iter()
        .map(|rs| rs.spec().to_string())
        .collect::<Vec<_>>()
        .join("x")
}

fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

fn relabel(e: Error, field: &str) -> Error {
    match e {
        Error::Parse { message, .. } => parse_err(field, message),
        other => other,
    }
}

fn split_factors<'a>(s: &'a str, n: usize, field: &str) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = s.split(';').map(str::trim).collect();
    if parts.len() != n {
        return Err(parse_err(
            field,
            format!("{} factor(s) given, the group has {n}", parts.len()),
        ));
    }
    Ok(parts)
}

/// One weight per factor, `;`-separated. Each is a comma list of
/// fundamental-weight coordinates, or `ambient:` followed by rationals.
pub fn parse_weights(s: &str, factors: &[RootSystem]) -> Result<Vec<WeightVec>> {
    split_factors(s, factors.len(), "weight")?
        .into_iter()
        .zip(factors)
        .map(|(part, rs)| parse_weight(part, rs))
        .collect()
}

fn parse_weight(s: &str, rs: &RootSystem) -> Result<WeightVec> {
    if let Some(rest) = s.strip_prefix("ambient:") {
        let coords = rest
            .split(',')
            .map(|x| parse_rational(x).map_err(|e| relabel(e, "weight")))
            .collect::<Result<Vec<Q>>>()?;
        if coords.len() != rs.ambient_dim() {
            return Err(parse_err(
                "weight",
                format!(
                    "{} ambient coordinates given, {} expects {}",
                    coords.len(),
                    rs.spec(),
                    rs.ambient_dim()
                ),
            ));
        }
        return Ok(WeightVec(coords));
    }
    let labels = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| parse_err("weight", format!("{x:?} is not an integer")))
        })
        .collect::<Result<Vec<i64>>>()?;
    if labels.len() != rs.rank() {
        return Err(parse_err(
            "weight",
            format!(
                "{} labels given, {} has rank {}",
                labels.len(),
                rs.spec(),
                rs.rank()
            ),
        ));
    }
    if labels.iter().any(|&a| a < 0) {
        return Err(parse_err(
            "weight",
            "fundamental-weight coordinates must be nonnegative",
        ));
    }
    Ok(rs.from_labels(&labels))
}

/// SU(2) spin `l` (an integer or half-integer) as fundamental-weight label `2l`.
pub fn spin_to_label(s: &str) -> Result<i64> {
    let l = parse_rational(s).map_err(|e| relabel(e, "l"))?;
    let twice = l * Q::from_integer(2.into());
    if !twice.is_integer() || twice < Q::from_integer(0.into()) {
        return Err(parse_err("l", "spin must be a nonnegative multiple of 1/2"));
    }
    twice
        .to_integer()
        .try_into()
        .map_err(|_| parse_err("l", "spin too large"))
}

enum Angle {
    /// Multiple of pi.
    Exact(Q),
    Radians(f64),
}

fn parse_angle(s: &str) -> Result<Angle> {
    let s = s.trim();
    let bad = || parse_err("point", format!("cannot parse angle {s:?}"));
    if s.matches("pi").count() > 1 {
        return Err(bad());
    }
    if s.contains("pi") {
        let mut t = s.replacen("pi", "", 1).replace('*', "");
        t = t.trim().to_string();
        if t.is_empty() || t == "+" {
            t = "1".into();
        } else if t == "-" {
            t = "-1".into();
        }
        if t.starts_with('/') {
            t.insert(0, '1');
        } else if t.starts_with("-/") {
            t.insert(1, '1');
        }
        return parse_rational(&t).map(Angle::Exact).map_err(|_| bad());
    }
    if s == "0" {
        return Ok(Angle::Exact(Q::from_integer(0.into())));
    }
    if let Ok(q) = parse_rational(s) {
        return Ok(Angle::Radians(weylchar_core::exact::to_f64(&q)));
    }
    s.parse::<f64>().map(Angle::Radians).map_err(|_| bad())
}

/// One point per factor, `;`-separated; within a factor, `:`-separated
/// entries. `rank` entries are the pairings `(alpha_i | h)` with the simple
/// roots; otherwise `ambient_dim` entries (or an `ambient:` prefix) give
/// ambient coordinates. Entries are `p/q*pi` style multiples of pi, or plain
/// numbers in radians; any plain number makes the point a float point,
/// which is snapped to a singular stratum or evaluated as regular.
pub fn parse_points(s: &str, factors: &[RootSystem]) -> Result<Vec<TorusPoint>> {
    split_factors(s, factors.len(), "point")?
        .into_iter()
        .zip(factors)
        .map(|(part, rs)| parse_point(part, rs))
        .collect()
}

fn parse_point(s: &str, rs: &RootSystem) -> Result<TorusPoint> {
    let (forced_ambient, body) = match s.strip_prefix("ambient:") {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let angles = body
        .split(':')
        .map(parse_angle)
        .collect::<Result<Vec<_>>>()?;
    let n = angles.len();
    let ambient = if forced_ambient {
        if n != rs.ambient_dim() {
            return Err(parse_err(
                "point",
                format!("{} expects {} ambient entries", rs.spec(), rs.ambient_dim()),
            ));
        }
        true
    } else if n == rs.rank() {
        false
    } else if n == rs.ambient_dim() {
        true
    } else {
        return Err(parse_err(
            "point",
            format!(
                "{n} entries given; {} takes {} simple-root pairings or {} ambient coordinates",
                rs.spec(),
                rs.rank(),
                rs.ambient_dim()
            ),
        ));
    };
    let exact: Option<Vec<Q>> = angles
        .iter()
        .map(|a| match a {
            Angle::Exact(q) => Some(q.clone()),
            Angle::Radians(_) => None,
        })
        .collect();
    let point = match (exact, ambient) {
        (Some(q), true) => TorusPoint::Exact(q),
        (Some(q), false) => TorusPoint::from_simple_pairings(rs, &q)?,
        (None, _) => {
            let radians: Vec<f64> = angles
                .iter()
                .map(|a| match a {
                    Angle::Exact(q) => weylchar_core::exact::to_f64(q) * std::f64::consts::PI,
                    Angle::Radians(x) => *x,
                })
                .collect();
            if ambient {
                TorusPoint::Float(radians)
            } else {
                TorusPoint::from_simple_pairings_float(rs, &radians)?
            }
        }
    };
    // surface type-A trace and length checks now, with the field name
    point.coroot_coords_float(rs).map_err(|e| match e {
        Error::Domain(m) => parse_err("point", m),
        other => other,
    })?;
    Ok(point)
}
