use std::fmt;
use std::path::Path;
use std::str::FromStr;

use bps_core::bps::{BpsVector, GeometryParams, GwVector, Kind};
use bps_core::quiver::EulerSeries;
use bps_core::ExactRational;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    LocalGw,
    LocalBps,
    RelativeGw,
    RelativeBps,
    Euler,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::LocalGw => "local_gw",
            SeriesKind::LocalBps => "local_bps",
            SeriesKind::RelativeGw => "relative_gw",
            SeriesKind::RelativeBps => "relative_bps",
            SeriesKind::Euler => "euler",
        }
    }

    pub fn of_gw(kind: Kind) -> Self {
        match kind {
            Kind::Local => SeriesKind::LocalGw,
            Kind::Relative => SeriesKind::RelativeGw,
        }
    }

    pub fn of_bps(kind: Kind) -> Self {
        match kind {
            Kind::Local => SeriesKind::LocalBps,
            Kind::Relative => SeriesKind::RelativeBps,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "local_gw" => SeriesKind::LocalGw,
            "local_bps" => SeriesKind::LocalBps,
            "relative_gw" => SeriesKind::RelativeGw,
            "relative_bps" => SeriesKind::RelativeBps,
            "euler" => SeriesKind::Euler,
            other => {
                return Err(format!(
                    "unknown kind {other:?}; expected one of local_gw, local_bps, relative_gw, relative_bps, euler"
                ))
            }
        })
    }
}

/// Contents of a parsed series file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesData {
    Gw(GwVector),
    Bps(BpsVector),
    Euler(EulerSeries),
}

impl SeriesData {
    pub fn kind(&self) -> SeriesKind {
        match self {
            SeriesData::Gw(v) => SeriesKind::of_gw(v.kind),
            SeriesData::Bps(v) => SeriesKind::of_bps(v.kind),
            SeriesData::Euler(_) => SeriesKind::Euler,
        }
    }

    pub fn into_gw(self, expected: Kind) -> Result<GwVector, CliError> {
        match self {
            SeriesData::Gw(v) if v.kind == expected => Ok(v),
            other => Err(wrong_kind(SeriesKind::of_gw(expected), other.kind())),
        }
    }

    pub fn into_bps(self, expected: Kind) -> Result<BpsVector, CliError> {
        match self {
            SeriesData::Bps(v) if v.kind == expected => Ok(v),
            other => Err(wrong_kind(SeriesKind::of_bps(expected), other.kind())),
        }
    }
}

fn wrong_kind(expected: SeriesKind, found: SeriesKind) -> CliError {
    CliError::Usage(format!("expected a {expected} file, got {found}"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    kind: Spanned<String>,
    w: Option<Spanned<i64>>,
    m: Option<Spanned<i64>>,
    primitive: Option<bool>,
    coeffs: Spanned<Vec<Spanned<String>>>,
}

/// On-disk layout, also used for output so that files round-trip.
#[derive(Serialize)]
pub(crate) struct SeriesRecord<'a> {
    pub kind: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    pub coeffs: Vec<String>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

pub fn parse_series_file(path: &Path) -> Result<SeriesData, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    parse_series_str(&text)
}

pub fn parse_series_str(text: &str) -> Result<SeriesData, CliError> {
    let raw: RawSeries = toml::from_str(text).map_err(|e| {
        let at = e.span().map(|s| format!("line {}: ", line_of(text, s.start))).unwrap_or_default();
        CliError::Syntax(format!("{at}{}", e.message()))
    })?;
    let err = |span: std::ops::Range<usize>, field: &str, message: String| CliError::Parse {
        line: line_of(text, span.start),
        field: field.into(),
        message,
    };

    let kind: SeriesKind = raw.kind.get_ref().parse().map_err(|m| err(raw.kind.span(), "kind", m))?;

    let small = |v: &Spanned<i64>, field: &str, min: i64| -> Result<u32, CliError> {
        u32::try_from(*v.get_ref())
            .ok()
            .filter(|&x| i64::from(x) >= min)
            .ok_or_else(|| err(v.span(), field, format!("must be an integer >= {min}, got {}", v.get_ref())))
    };

    let coeffs: Vec<ExactRational> = raw
        .coeffs
        .get_ref()
        .iter()
        .enumerate()
        .map(|(i, c)| c.get_ref().parse().map_err(|e| err(c.span(), &format!("coeffs[{i}]"), format!("{e}"))))
        .collect::<Result<_, _>>()?;
    if coeffs.is_empty() {
        return Err(err(raw.coeffs.span(), "coeffs", "must not be empty".into()));
    }

    if kind == SeriesKind::Euler {
        if let Some(w) = &raw.w {
            return Err(err(w.span(), "w", "not allowed for kind = euler".into()));
        }
        if raw.primitive.is_some() {
            return Err(err(raw.kind.span(), "primitive", "not allowed for kind = euler".into()));
        }
        let m = raw.m.as_ref().ok_or_else(|| err(raw.kind.span(), "m", "required for kind = euler".into()))?;
        let m = small(m, "m", 0)?;
        let chi = coeffs
            .into_iter()
            .zip(raw.coeffs.get_ref())
            .enumerate()
            .map(|(i, (c, s))| {
                c.to_integer().ok_or_else(|| err(s.span(), &format!("coeffs[{i}]"), "Euler characteristics are integers".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let euler = EulerSeries::new(m, chi).map_err(|e| err(raw.coeffs.span(), "coeffs", e.to_string()))?;
        return Ok(SeriesData::Euler(euler));
    }

    if let Some(m) = &raw.m {
        return Err(err(m.span(), "m", format!("only allowed for kind = euler, not {kind}")));
    }
    let w = raw.w.as_ref().ok_or_else(|| err(raw.kind.span(), "w", format!("required for kind = {kind}")))?;
    let geometry = GeometryParams::new(small(w, "w", 1)?, raw.primitive.unwrap_or(false))?;
    Ok(match kind {
        SeriesKind::LocalGw => SeriesData::Gw(GwVector::local(geometry, coeffs)),
        SeriesKind::RelativeGw => SeriesData::Gw(GwVector::relative(geometry, coeffs)),
        SeriesKind::LocalBps => SeriesData::Bps(BpsVector::local(geometry, coeffs)),
        SeriesKind::RelativeBps => SeriesData::Bps(BpsVector::relative(geometry, coeffs)),
        SeriesKind::Euler => unreachable!(),
    })
}

pub(crate) fn render_rationals(v: &[ExactRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl SeriesData {
    pub(crate) fn record(&self) -> SeriesRecord<'static> {
        let vector = |kind: SeriesKind, g: &GeometryParams, e: &[ExactRational]| SeriesRecord {
            kind: kind.as_str(),
            w: Some(g.w()),
            m: None,
            primitive: Some(g.primitive),
            coeffs: render_rationals(e),
        };
        match self {
            SeriesData::Gw(v) => vector(SeriesKind::of_gw(v.kind), &v.geometry, &v.entries),
            SeriesData::Bps(v) => vector(SeriesKind::of_bps(v.kind), &v.geometry, &v.entries),
            SeriesData::Euler(e) => SeriesRecord {
                kind: SeriesKind::Euler.as_str(),
                w: None,
                m: Some(e.m),
                primitive: None,
                coeffs: e.chi().iter().map(ToString::to_string).collect(),
            },
        }
    }
}
