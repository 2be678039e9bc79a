//! Named built-in metric groups and the text format parser.

use crate::exactnum::RationalMod1;

use super::{FiniteAbelianGroup, GroupElement, MetricError, MetricGroup};

/// Names of the built-in metric groups, in canonical order.
pub fn library_names() -> Vec<&'static str> {
    vec![
        "trivial",
        "rep-z2",
        "svec",
        "toric-code",
        "double-semion",
        "semion",
        "anti-semion",
        "z4-1",
        "z4-3",
        "z4-5",
        "z4-7",
    ]
}

/// Look up a built-in metric group by name.
pub fn library(name: &str) -> Option<MetricGroup> {
    let half = RationalMod1::HALF;
    let quarter = RationalMod1::from_parts(1, 4);
    let mg = match name {
        "trivial" => MetricGroup::from_fn(FiniteAbelianGroup::trivial(), |_| RationalMod1::ZERO),
        "rep-z2" => MetricGroup::from_fn(FiniteAbelianGroup::cyclic(2), |_| RationalMod1::ZERO),
        "svec" => MetricGroup::from_fn(FiniteAbelianGroup::cyclic(2), |x| {
            if x.is_zero() {
                RationalMod1::ZERO
            } else {
                half
            }
        }),
        "toric-code" => MetricGroup::from_fn(
            FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
            |x| {
                // e = (1,0), m = (0,1) bosons; f = (1,1) the fermion.
                if x.coords() == [1, 1] {
                    half
                } else {
                    RationalMod1::ZERO
                }
            },
        ),
        "double-semion" => MetricGroup::from_fn(
            FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
            |x| match x.coords() {
                [1, 0] => quarter,
                [0, 1] => RationalMod1::from_parts(3, 4),
                _ => RationalMod1::ZERO,
            },
        ),
        "semion" => MetricGroup::from_fn(FiniteAbelianGroup::cyclic(2), |x| {
            if x.is_zero() {
                RationalMod1::ZERO
            } else {
                quarter
            }
        }),
        "anti-semion" => MetricGroup::from_fn(FiniteAbelianGroup::cyclic(2), |x| {
            if x.is_zero() {
                RationalMod1::ZERO
            } else {
                RationalMod1::from_parts(3, 4)
            }
        }),
        "z4-1" | "z4-3" | "z4-5" | "z4-7" => {
            let k: i64 = name[3..].parse().unwrap();
            MetricGroup::from_fn(FiniteAbelianGroup::cyclic(4), move |x| {
                let a = x.coords()[0] as i64;
                RationalMod1::from_parts(k * a * a, 8)
            })
        }
        _ => return None,
    };
    Some(mg.expect("built-in metric groups are valid"))
}

/// Parse the text format produced by `MetricGroup`'s `Display`.
pub fn parse_metric_group(text: &str) -> Result<MetricGroup, MetricError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| MetricError::InvalidMetric("empty input".into()))?;
    let header = header.trim();
    let rest = header
        .strip_prefix("factors")
        .ok_or_else(|| MetricError::InvalidMetric("expected a `factors` line".into()))?;
    let factors: Vec<u64> = rest
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| MetricError::InvalidMetric(format!("bad factor {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    let group = FiniteAbelianGroup::new(factors).map_err(MetricError::InvalidMetric)?;
    let mut q = vec![None; group.order() as usize];
    for line in lines {
        let (elem, value) = line
            .split_once(':')
            .ok_or_else(|| MetricError::InvalidMetric(format!("bad line {line:?}")))?;
        let elem = parse_element(elem.trim())?;
        if !group.contains(&elem) {
            return Err(MetricError::BadElement);
        }
        let value: RationalMod1 = value.trim().parse()?;
        q[group.index_of(&elem)] = Some(value);
    }
    let q: Vec<RationalMod1> = q
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| MetricError::InvalidMetric("missing q value for some element".into()))?;
    MetricGroup::new(group, q)
}

pub(crate) fn parse_element(s: &str) -> Result<GroupElement, MetricError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| MetricError::InvalidMetric(format!("bad element {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(GroupElement::new(Vec::new()));
    }
    let coords: Vec<u64> = inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| MetricError::InvalidMetric(format!("bad coordinate {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    Ok(GroupElement::new(coords))
}
