//! Output documents shared by every subcommand.
//!
//! Exact values are `p/q` strings in lowest terms; each is paired with a
//! `<name>_decimal` field rounded to six places for plotting.

use ldic_core::ldsim::SessionResult;
use ldic_core::metrics::{MetricSurface, MetricsResult, ThresholdReport};
use ldic_core::{
    BoundId, BoundSet, ChannelParams, Constraint, Provenance, RatePoint, RatePolytope, Rational,
    User,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub params: ParamsEcho,
    pub payload: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub n11: u32,
    pub n22: u32,
    pub n12: u32,
    pub n21: u32,
    pub fb11: u32,
    pub fb22: u32,
}

impl From<&ChannelParams> for ParamsEcho {
    fn from(p: &ChannelParams) -> Self {
        ParamsEcho {
            n11: p.fwd11,
            n22: p.fwd22,
            n12: p.inr12,
            n21: p.inr21,
            fb11: p.fb11,
            fb22: p.fb22,
        }
    }
}

impl From<&ParamsEcho> for ChannelParams {
    fn from(p: &ParamsEcho) -> Self {
        ChannelParams::new(p.n11, p.n22, p.n12, p.n21, p.fb11, p.fb22)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Region(RegionPayload),
    Metrics(MetricsPayload),
    Surface(SurfacePayload),
    Session(SessionPayload),
}

pub fn exact(r: Rational) -> String {
    r.to_string()
}

pub fn decimal(r: Rational) -> f64 {
    r.to_decimal_string(6).parse().expect("formatted decimal parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub id: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub coef1: i64,
    pub coef2: i64,
    pub rhs: i64,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub r1: String,
    pub r1_decimal: f64,
    pub r2: String,
    pub r2_decimal: f64,
    /// Sources of the constraints tight at this vertex.
    pub active: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionPayload {
    pub evaluations: Vec<Evaluation>,
    pub bounds: Vec<BoundEntry>,
    pub vertices: Vec<VertexEntry>,
}

impl RegionPayload {
    pub fn new(evaluations: &[(BoundId, i64)], region: &RatePolytope) -> Self {
        RegionPayload {
            evaluations: evaluations
                .iter()
                .map(|(id, value)| Evaluation {
                    id: id.tag().to_string(),
                    value: *value,
                })
                .collect(),
            bounds: region
                .bounds()
                .iter()
                .map(|c| BoundEntry {
                    coef1: c.coef1,
                    coef2: c.coef2,
                    rhs: c.rhs,
                    source: c.source.to_string(),
                })
                .collect(),
            vertices: region
                .vertices()
                .iter()
                .map(|v| VertexEntry {
                    r1: exact(v.r1),
                    r1_decimal: decimal(v.r1),
                    r2: exact(v.r2),
                    r2_decimal: decimal(v.r2),
                    active: region.active_constraints(v).map(|c| c.source.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn bound_set(&self) -> Result<BoundSet, String> {
        self.bounds
            .iter()
            .map(|b| {
                let source: Provenance = b.source.parse()?;
                Ok(Constraint::new(b.coef1, b.coef2, b.rhs, source))
            })
            .collect::<Result<Vec<_>, String>>()
            .map(BoundSet::new)
    }

    pub fn vertex_points(&self) -> Result<Vec<RatePoint>, String> {
        self.vertices
            .iter()
            .map(|v| {
                let r1 = v.r1.parse::<Rational>().map_err(|e| e.to_string())?;
                let r2 = v.r2.parse::<Rational>().map_err(|e| e.to_string())?;
                Ok(RatePoint::new(r1, r2))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEntry {
    pub link: u8,
    pub threshold: Option<u32>,
    pub saturation: u32,
}

impl From<&ThresholdReport> for ThresholdEntry {
    fn from(t: &ThresholdReport) -> Self {
        ThresholdEntry {
            link: t.link.number(),
            threshold: t.threshold,
            saturation: t.saturation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricValues {
    pub delta1: String,
    pub delta1_decimal: f64,
    pub delta2: String,
    pub delta2_decimal: f64,
    pub sigma: String,
    pub sigma_decimal: f64,
}

impl From<&MetricsResult> for MetricValues {
    fn from(m: &MetricsResult) -> Self {
        MetricValues {
            delta1: exact(m.delta1),
            delta1_decimal: decimal(m.delta1),
            delta2: exact(m.delta2),
            delta2_decimal: decimal(m.delta2),
            sigma: exact(m.sigma),
            sigma_decimal: decimal(m.sigma),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsPayload {
    #[serde(flatten)]
    pub values: MetricValues,
    pub thresholds: Vec<ThresholdEntry>,
    pub feedback_useless: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCell {
    pub fb11: u32,
    pub fb22: u32,
    #[serde(flatten)]
    pub values: MetricValues,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfacePayload {
    pub max_fb11: u32,
    pub max_fb22: u32,
    pub cells: Vec<SurfaceCell>,
}

impl From<&MetricSurface> for SurfacePayload {
    fn from(s: &MetricSurface) -> Self {
        SurfacePayload {
            max_fb11: s.max_fb11,
            max_fb22: s.max_fb22,
            cells: s
                .iter()
                .map(|(fb11, fb22, m)| SurfaceCell {
                    fb11,
                    fb22,
                    values: m.into(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserSummary {
    pub user: u8,
    pub message_len: usize,
    pub rate: String,
    pub rate_decimal: f64,
    pub p: String,
    pub p_decimal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    #[serde(rename = "use")]
    pub channel_use: usize,
    pub x1: String,
    pub x2: String,
    pub y1: String,
    pub y2: String,
    pub fb1: String,
    pub fb2: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionPayload {
    pub scheme: String,
    pub seed: u64,
    pub q: usize,
    pub delay: usize,
    pub block_length: usize,
    pub users: Vec<UserSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub messages: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimates: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRow>>,
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl SessionPayload {
    pub fn new(
        scheme: &str,
        seed: u64,
        q: usize,
        delay: usize,
        result: &SessionResult,
        with_trace: bool,
    ) -> Self {
        let users = User::BOTH
            .iter()
            .map(|&u| UserSummary {
                user: u.number(),
                message_len: result.message_len(u),
                rate: exact(result.rate(u)),
                rate_decimal: decimal(result.rate(u)),
                p: exact(result.p(u)),
                p_decimal: decimal(result.p(u)),
            })
            .collect();
        let trace = with_trace.then(|| {
            result
                .trace
                .iter()
                .enumerate()
                .map(|(i, t)| TraceRow {
                    channel_use: i + 1,
                    x1: t.x1.to_string(),
                    x2: t.x2.to_string(),
                    y1: t.y1.to_string(),
                    y2: t.y2.to_string(),
                    fb1: t.fb1.to_string(),
                    fb2: t.fb2.to_string(),
                })
                .collect()
        });
        SessionPayload {
            scheme: scheme.to_string(),
            seed,
            q,
            delay,
            block_length: result.block_length,
            users,
            messages: with_trace.then(|| result.messages.iter().map(|m| bit_string(m)).collect()),
            estimates: with_trace.then(|| result.estimates.iter().map(|m| bit_string(m)).collect()),
            trace,
        }
    }
}
