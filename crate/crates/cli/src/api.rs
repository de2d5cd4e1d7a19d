//! Request and response types shared by the command line tool and the HTTP service.
//!
//! Every operation is a pure function of its input.

use serde::{Deserialize, Serialize};

use pezzo_core::classifier::{enumerate_minimal, Enumeration};
use pezzo_core::fixtures::{self, Label};
use pezzo_core::mutation::{block_quiver_mutate, is_minimal, quiver_mutate, reduce_to_minimal, Side};
use pezzo_core::polygon::{polygon_of, HalfPlane, LongEdge};
use pezzo_core::svg::{render_svg, SvgOptions};
use pezzo_core::weyl;
use pezzo_core::{Collection, Error, NumClass, Polygon, Quiver, SurfaceKind};

/// A rejected request, reported as HTTP 400 or exit code 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApiError {
    pub ok: bool,
    pub error: &'static str,
    pub reason: String,
}

impl ApiError {
    pub fn new(error: &'static str, reason: impl Into<String>) -> ApiError {
        ApiError { ok: false, error, reason: reason.into() }
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.error, self.reason)
    }
}

impl std::error::Error for ApiError {}

impl From<Error> for ApiError {
    fn from(e: Error) -> ApiError {
        let error = match e {
            Error::UnknownSurface(_) => "unknown_surface",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotExceptional { .. } | Error::NotExceptionalCollection { .. } => "not_exceptional",
            Error::NonPositiveRank { .. } => "non_positive_rank",
            Error::NotFull { .. } => "not_full",
            Error::NotVeryStrong => "not_very_strong",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::PolygonInvariant(_) => "polygon_invariant",
            Error::Mutation(_) => "mutation_failed",
            _ => "invalid_input",
        };
        ApiError::new(error, e.to_string())
    }
}

impl From<serde_json::Error> for ApiError {
    fn from(e: serde_json::Error) -> ApiError {
        ApiError::new("malformed_json", e.to_string())
    }
}

pub type ApiResult<T> = std::result::Result<T, ApiError>;

/// One object of a collection; `chi` is derived from `r` and `c1` when omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectJson {
    pub r: i64,
    pub c1: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
}

/// `{"surface": id, "objects": [{"r", "c1"}...], "blocks": [sizes]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionJson {
    pub surface: SurfaceKind,
    pub objects: Vec<ObjectJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
}

impl CollectionJson {
    /// Decode into exceptional classes, checking dimensions and any supplied `chi`.
    pub fn to_collection(&self) -> ApiResult<Collection> {
        let s = self.surface.surface();
        let mut objects = Vec::with_capacity(self.objects.len());
        for (k, o) in self.objects.iter().enumerate() {
            s.check_dim(&o.c1).map_err(|e| ApiError::new("dimension_mismatch", format!("object {k}: {e}")))?;
            let class = NumClass::exceptional(o.r, o.c1.clone(), s)?;
            if let Some(chi) = o.chi {
                if chi != class.chi {
                    return Err(ApiError::new(
                        "not_exceptional",
                        format!("object {k}: chi {chi} differs from the exceptional value {}", class.chi),
                    ));
                }
            }
            objects.push(class);
        }
        Ok(Collection::new(self.surface, objects)?)
    }

    /// Encode a collection, attaching its block sizes when it is very strong.
    pub fn from_collection(c: &Collection) -> CollectionJson {
        let blocks = c.detect_blocks().ok().map(|b| b.sizes);
        CollectionJson {
            surface: c.surface,
            objects: c.objects.iter().map(|o| ObjectJson { r: o.r, c1: o.c1.clone(), chi: Some(o.chi) }).collect(),
            blocks,
        }
    }
}

/// Parse a label written as `3,7` or `(3,7)`.
pub fn parse_label(s: &str) -> ApiResult<Label> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let bad = || ApiError::new("invalid_label", format!("label `{s}` is not of the form b,n"));
    if parts.len() != 2 {
        return Err(bad());
    }
    Ok([parts[0].parse().map_err(|_| bad())?, parts[1].parse().map_err(|_| bad())?])
}

/// The bundled collection realising a table label.
pub fn fixture(surface: SurfaceKind, label: Label) -> ApiResult<CollectionJson> {
    let entry = fixtures::for_surface(surface).entry(label).ok_or_else(|| {
        ApiError::new("unknown_label", format!("{surface} has no label {}", fixtures::format_label(label)))
    })?;
    Ok(CollectionJson::from_collection(&entry.collection(surface)?))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceInfo {
    pub id: SurfaceKind,
    pub picard_rank: usize,
    pub k2: i64,
    pub canonical: Vec<i64>,
    pub intersection: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub weyl_order: u128,
    pub collection_length: usize,
    pub labels: Vec<Label>,
}

pub fn surfaces() -> Vec<SurfaceInfo> {
    SurfaceKind::ALL
        .iter()
        .map(|&kind| {
            let s = kind.surface();
            SurfaceInfo {
                id: kind,
                picard_rank: s.picard_rank,
                k2: s.k2,
                canonical: s.canonical.clone(),
                intersection: s.intersection.clone(),
                simple_roots: s.simple_roots.clone(),
                weyl_order: weyl::expected_order(kind),
                collection_length: s.collection_length(),
                labels: fixtures::for_surface(kind).entries.iter().map(|e| e.label).collect(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Validation {
    pub ok: bool,
    pub full: bool,
    pub exceptional: bool,
    pub very_strong: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub broken: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<bool>,
    pub total_rank: i64,
    pub reasons: Vec<String>,
}

/// Full, exceptional, very strong and consistent with any supplied block sizes.
pub fn validate(input: &CollectionJson) -> ApiResult<Validation> {
    let c = input.to_collection()?;
    let mut reasons = Vec::new();
    let full = c.check_full().map_err(|e| reasons.push(e.to_string())).is_ok();
    let exceptional = c.check_exceptional().map_err(|e| reasons.push(e.to_string())).is_ok();
    let very_strong = c.is_very_strong().unwrap_or(false);
    if !very_strong {
        reasons.push(Error::NotVeryStrong.to_string());
    }
    let detected = if very_strong { c.detect_blocks().ok() } else { None };
    if let (Some(given), Some(found)) = (&input.blocks, &detected) {
        if *given != found.sizes {
            reasons.push(format!("block sizes {given:?} differ from detected {:?}", found.sizes));
        }
    }
    let minimal = if full && exceptional && very_strong { is_minimal(&c).ok() } else { None };
    Ok(Validation {
        ok: reasons.is_empty(),
        full,
        exceptional,
        very_strong,
        broken: detected.as_ref().map(|b| b.broken),
        blocks: detected.map(|b| b.sizes),
        minimal,
        total_rank: c.total_rank(),
        reasons,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GramResponse {
    pub gram: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_gram: Option<Vec<Vec<i64>>>,
}

pub fn gram(input: &CollectionJson) -> ApiResult<GramResponse> {
    let c = input.to_collection()?;
    let blocks = c.detect_blocks().ok();
    Ok(GramResponse {
        gram: c.gram_matrix(),
        reduced_gram: blocks.as_ref().map(|b| c.reduced_gram(b)),
        blocks: blocks.map(|b| b.sizes),
    })
}

/// A collection with optional rendering options under `svg`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonRequest {
    #[serde(flatten)]
    pub collection: CollectionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<SvgOptions>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonResponse {
    #[serde(flatten)]
    pub polygon: Polygon,
    pub ranks: Vec<i64>,
    pub area_x2: i128,
    pub convex: bool,
    pub long_edges: Vec<LongEdge>,
    pub parallel_long_edges: Vec<(usize, usize)>,
    pub admissible_vertices: Vec<usize>,
    pub forbidden_region: Vec<HalfPlane>,
    pub origin_in_forbidden: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub svg: Option<String>,
}

pub fn polygon(input: &CollectionJson, svg: Option<&SvgOptions>) -> ApiResult<PolygonResponse> {
    let c = input.to_collection()?;
    let p = polygon_of(&c)?;
    let convex = p.is_convex()?;
    Ok(PolygonResponse {
        ranks: c.ranks(),
        area_x2: p.area_x2().to_integer(),
        long_edges: p.long_edges(),
        parallel_long_edges: p.parallel_long_edges(),
        admissible_vertices: if convex { p.admissible_vertices() } else { Vec::new() },
        forbidden_region: if convex { p.forbidden_region() } else { Vec::new() },
        origin_in_forbidden: convex && p.origin_in_forbidden(),
        svg: svg.map(|o| render_svg(&p, o)),
        convex,
        polygon: p,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverResponse {
    pub quiver: Quiver,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Quiver>,
    pub plucker: bool,
    pub complete: bool,
}

pub fn quiver(input: &CollectionJson) -> ApiResult<QuiverResponse> {
    let c = input.to_collection()?;
    let q = Quiver::of_collection(&c)?;
    let reduced = q.reduced();
    Ok(QuiverResponse {
        plucker: reduced.as_ref().is_none_or(Quiver::satisfies_plucker),
        complete: reduced.as_ref().is_some_and(Quiver::is_complete),
        quiver: q,
        reduced,
    })
}

fn default_side() -> Side {
    Side::Right
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MutateRequest {
    pub collection: CollectionJson,
    /// Object position, or block index when `block` is set.
    pub index: usize,
    #[serde(default = "default_side")]
    pub side: Side,
    #[serde(default)]
    pub block: bool,
    /// `quiver_mutate` (the default) or `block_quiver_mutate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MutateResponse {
    pub collection: CollectionJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
    pub total_rank: i64,
    pub minimal: bool,
    pub gram: Vec<Vec<i64>>,
    pub polygon: Polygon,
    pub quiver: Quiver,
}

pub fn mutate(req: &MutateRequest) -> ApiResult<MutateResponse> {
    let c = req.collection.to_collection()?;
    let block = match req.op.as_deref() {
        None | Some("quiver_mutate") => req.block,
        Some("block_quiver_mutate") => true,
        Some(other) => return Err(ApiError::new("unknown_op", format!("unknown mutation op `{other}`"))),
    };
    let (out, target, perm) = if block {
        (block_quiver_mutate(&c, req.index, req.side)?, None, None)
    } else {
        let m = quiver_mutate(&c, req.index, req.side)?;
        (m.collection, Some(m.target), Some(m.perm))
    };
    Ok(MutateResponse {
        minimal: is_minimal(&out)?,
        total_rank: out.total_rank(),
        gram: out.gram_matrix(),
        polygon: polygon_of(&out)?,
        quiver: Quiver::of_collection(&out)?,
        collection: CollectionJson::from_collection(&out),
        target,
        perm,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimalResponse {
    pub minimal: bool,
    pub total_rank: i64,
    pub reduced: CollectionJson,
    pub reduced_total_rank: i64,
}

pub fn minimal(input: &CollectionJson) -> ApiResult<MinimalResponse> {
    let c = input.to_collection()?;
    let minimal = is_minimal(&c)?;
    let reduced = reduce_to_minimal(&c)?;
    Ok(MinimalResponse {
        minimal,
        total_rank: c.total_rank(),
        reduced_total_rank: reduced.total_rank(),
        reduced: CollectionJson::from_collection(&reduced),
    })
}

/// Enumeration together with its comparison against the bundled table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumerationReport {
    #[serde(flatten)]
    pub enumeration: Enumeration,
    pub expected: Vec<Label>,
    pub unmatched: usize,
    pub missing: Vec<Label>,
    pub matches_table: bool,
}

pub fn enumerate(surface: SurfaceKind, blocks: usize) -> ApiResult<EnumerationReport> {
    let enumeration = enumerate_minimal(surface, blocks)?;
    let expected: Vec<Label> =
        fixtures::for_surface(surface).entries.iter().filter(|e| e.label[0] == blocks).map(|e| e.label).collect();
    let found: Vec<Label> = enumeration.candidates.iter().filter_map(|c| c.label).collect();
    let unmatched = enumeration.candidates.iter().filter(|c| c.label.is_none()).count();
    let missing: Vec<Label> = expected.iter().filter(|l| !found.contains(l)).copied().collect();
    let matches_table = unmatched == 0 && missing.is_empty() && found.len() == expected.len();
    Ok(EnumerationReport { enumeration, expected, unmatched, missing, matches_table })
}
