//! Bundled classification tables and their verification drivers.
//!
//! One JSON file per surface, with this shape:
//!
//! ```json
//! {
//!   "surface": "X5",
//!   "entries": [{
//!     "label": [3, 7],
//!     "alphas": [2, 2, 4],
//!     "ranks": [1, 1, 1],
//!     "reduced_gram": [[1, 2, 3], [0, 1, 1], [0, 0, 1]],
//!     "reduced_quiver": [2, -1, 1],
//!     "blocks": [[{"r": 1, "c1": [0, 0, 0, 0, 0, 1]}, ...], ...],
//!     "certificate": {"kind": "pairs", "pairs": [{"weyl": [4], "mutations": []}, ...]}
//!   }],
//!   "relations": [{"source": [4, 8], "target": "3,*", "sequence": [3, 4, 3, 1, 1]}]
//! }
//! ```
//!
//! `reduced_quiver` lists `c_01, c_02, ..., c_{k-2,k-1}` row by row. The certificate
//! kind is one of `trivial_group`, `all_reflections` or `pairs`.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::collection::{serre_matrix, BlockData, Collection};
use crate::error::{Error, Result};
use crate::mutation::{apply_mutation_sequence, is_minimal, Side};
use crate::polygon::polygon_of;
use crate::quiver::Quiver;
use crate::surface::{IndexBase, SurfaceKind};
use crate::weyl;
use crate::Q;

pub type Label = [usize; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectData {
    pub r: i64,
    pub c1: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    TrivialGroup,
    AllReflections,
    Pairs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePair {
    pub weyl: Vec<usize>,
    pub mutations: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<CertificatePair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub label: Label,
    pub alphas: Vec<usize>,
    pub ranks: Vec<i64>,
    pub reduced_gram: Vec<Vec<i64>>,
    pub reduced_quiver: Vec<i64>,
    pub blocks: Vec<Vec<ObjectData>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelationTarget {
    Label(Label),
    /// `"3,*"`: any collection with three blocks.
    AnyThreeBlock(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub source: Label,
    pub target: RelationTarget,
    pub sequence: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFixtures {
    pub surface: SurfaceKind,
    pub entries: Vec<FixtureEntry>,
    #[serde(default)]
    pub relations: Vec<Relation>,
}

const RAW: [&str; 10] = [
    include_str!("../fixtures/P2.json"),
    include_str!("../fixtures/P1xP1.json"),
    include_str!("../fixtures/X1.json"),
    include_str!("../fixtures/X2.json"),
    include_str!("../fixtures/X3.json"),
    include_str!("../fixtures/X4.json"),
    include_str!("../fixtures/X5.json"),
    include_str!("../fixtures/X6.json"),
    include_str!("../fixtures/X7.json"),
    include_str!("../fixtures/X8.json"),
];

/// All bundled tables, parsed once.
pub fn all() -> &'static [SurfaceFixtures] {
    static CELL: OnceLock<Vec<SurfaceFixtures>> = OnceLock::new();
    CELL.get_or_init(|| RAW.iter().map(|s| serde_json::from_str(s).expect("bundled fixture parses")).collect())
}

pub fn for_surface(kind: SurfaceKind) -> &'static SurfaceFixtures {
    all().iter().find(|f| f.surface == kind).expect("every surface has a table")
}

pub fn format_label(l: Label) -> String {
    format!("({},{})", l[0], l[1])
}

impl SurfaceFixtures {
    pub fn entry(&self, label: Label) -> Option<&FixtureEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

impl FixtureEntry {
    /// The realising collection, blocks concatenated in order.
    pub fn collection(&self, surface: SurfaceKind) -> Result<Collection> {
        let data: Vec<(i64, Vec<i64>)> = self.blocks.iter().flatten().map(|o| (o.r, o.c1.clone())).collect();
        Collection::from_rank_c1(surface, &data)
    }
}

/// One named check on one subject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub subject: String,
    pub check: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(with = "duration_ms")]
    pub elapsed: Duration,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        (d.as_secs_f64() * 1000.0).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)? / 1000.0))
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    fn push(&mut self, subject: &str, check: &str, outcome: std::result::Result<(), String>) {
        let (ok, detail) = match outcome {
            Ok(()) => (true, None),
            Err(e) => (false, Some(e)),
        };
        self.checks.push(Check { subject: subject.to_string(), check: check.to_string(), ok, detail });
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("expected {want:?}, got {got:?}"))
    }
}

/// Block count and least cyclic `(alpha, rank, chi)` data.
pub type BlockKey = (usize, Vec<(usize, i64, i64)>);

/// Block data of the unbroken rotation, for comparisons up to rotation.
pub fn block_key(c: &Collection) -> Result<BlockKey> {
    let (u, _) = c.unbroken()?;
    let data = u.block_data(&u.detect_blocks()?);
    Ok((data.alphas.len(), data.cyclic_key()))
}

/// `sum_i chi_{i,i+1} / (r_i r_{i+1})` over consecutive blocks, wrapping around.
pub fn work_horse_sum(d: &BlockData) -> Q {
    let k = d.ranks.len();
    (0..k).fold(Q::zero(), |acc, i| {
        acc + Q::new(d.chi_adjacent[i] as i128, (d.ranks[i] * d.ranks[(i + 1) % k]) as i128)
    })
}

/// Run every table check on one entry.
pub fn verify_entry(surface: SurfaceKind, e: &FixtureEntry, report: &mut Report) {
    let subject = format!("{surface} {}", format_label(e.label));
    let s = surface.surface();
    let c = match e.collection(surface) {
        Ok(c) => c,
        Err(err) => return report.push(&subject, "classes", Err(err.to_string())),
    };
    report.push(&subject, "full", c.check_full().map_err(|x| x.to_string()));
    report.push(&subject, "exceptional", c.check_exceptional().map_err(|x| x.to_string()));
    let vs = c.is_very_strong().unwrap_or(false);
    report.push(&subject, "very strong", if vs { Ok(()) } else { Err("slopes not weakly increasing within K^2".into()) });
    if !vs {
        return;
    }
    let blocks = c.detect_blocks().expect("very strong");
    let given: Vec<usize> = e.blocks.iter().map(Vec::len).collect();
    report.push(&subject, "block sizes", expect_eq(&blocks.sizes, &e.alphas).and(expect_eq(&given, &e.alphas)));
    if blocks.sizes != e.alphas {
        return;
    }
    let data = c.block_data(&blocks);
    let uniform = e.blocks.iter().all(|b| b.iter().all(|o| o.r == b[0].r));
    report.push(
        &subject,
        "ranks",
        expect_eq(&data.ranks, &e.ranks).and(if uniform { Ok(()) } else { Err("ranks differ within a block".into()) }),
    );
    report.push(&subject, "reduced gram", expect_eq(&data.reduced_gram, &e.reduced_gram));
    report.push(
        &subject,
        "reduced quiver",
        Quiver::of_collection(&c)
            .map_err(|x| x.to_string())
            .and_then(|q| expect_eq(q.reduced().expect("blocks set").upper_entries(), e.reduced_quiver.clone())),
    );
    report.push(
        &subject,
        "serre",
        serre_matrix(&c.gram_matrix())
            .map_err(|x| x.to_string())
            .and_then(|r| if r.passes() { Ok(()) } else { Err("Serre matrix test fails".into()) }),
    );
    let alpha_sum = e.alphas.iter().sum::<usize>() as i64;
    report.push(&subject, "alpha sum", expect_eq(alpha_sum + s.k2, 12));
    report.push(&subject, "work horse", expect_eq(work_horse_sum(&data), Q::from_integer(s.k2 as i128)));
    report.push(
        &subject,
        "minimal",
        is_minimal(&c)
            .map_err(|x| x.to_string())
            .and_then(|m| if m { Ok(()) } else { Err("origin outside the forbidden region".into()) }),
    );
    report.push(
        &subject,
        "block complete",
        c.unbroken().and_then(|(u, _)| polygon_of(&u)).map_err(|x| x.to_string()).and_then(|p| {
            let pairs = p.parallel_long_edges();
            if pairs.is_empty() {
                Ok(())
            } else {
                Err(format!("parallel long edges {pairs:?}"))
            }
        }),
    );
}

pub fn verify_tables_of(tables: &[SurfaceFixtures]) -> Report {
    let start = Instant::now();
    let mut report = Report::default();
    for t in tables {
        for e in &t.entries {
            verify_entry(t.surface, e, &mut report);
        }
    }
    report.elapsed = start.elapsed();
    report
}

pub fn verify_tables() -> Report {
    verify_tables_of(all())
}

fn check_relation(t: &SurfaceFixtures, rel: &Relation) -> std::result::Result<(), String> {
    let src = t.entry(rel.source).ok_or("unknown source label")?;
    let c = src.collection(t.surface).map_err(|e| e.to_string())?;
    let out = apply_mutation_sequence(&c, &rel.sequence, Side::Left).map_err(|e| e.to_string())?;
    let (count, key) = block_key(&out).map_err(|e| e.to_string())?;
    match &rel.target {
        RelationTarget::AnyThreeBlock(_) => expect_eq(count, 3),
        RelationTarget::Label(l) => {
            let tgt = t.entry(*l).ok_or("unknown target label")?;
            let want = block_key(&tgt.collection(t.surface).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            expect_eq((count, key), want)
        }
    }
}

pub fn verify_relations_of(tables: &[SurfaceFixtures]) -> Report {
    let start = Instant::now();
    let mut report = Report::default();
    for t in tables {
        for rel in &t.relations {
            let target = match &rel.target {
                RelationTarget::Label(l) => format_label(*l),
                RelationTarget::AnyThreeBlock(_) => "(3,*)".to_string(),
            };
            let subject = format!("{} {} -> {} via {:?}", t.surface, format_label(rel.source), target, rel.sequence);
            report.push(&subject, "relation", check_relation(t, rel));
        }
    }
    report.elapsed = start.elapsed();
    report
}

pub fn verify_relations() -> Report {
    verify_relations_of(all())
}

/// Result of checking every certificate under one reading of the reflection indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateReport {
    /// The index base under which every certificate verifies, if any.
    pub index_base: Option<IndexBase>,
    pub report: Report,
    /// Reports for each candidate index base that was tried.
    pub candidates: Vec<(IndexBase, Report)>,
}

fn certificate_checks(t: &SurfaceFixtures, e: &FixtureEntry, cert: &Certificate, base: IndexBase, report: &mut Report) {
    let kind = t.surface;
    let s = kind.surface();
    let subject = format!("{kind} {}", format_label(e.label));
    let c = match e.collection(kind) {
        Ok(c) => c,
        Err(err) => return report.push(&subject, "classes", Err(err.to_string())),
    };
    let expected = weyl::expected_order(kind);
    match cert.kind {
        CertificateKind::TrivialGroup => {
            report.push(&subject, "trivial group", expect_eq(s.simple_roots.len(), 0));
        }
        CertificateKind::AllReflections => {
            for i in 0..s.simple_roots.len() {
                let outcome = c.weyl_apply(&[i]).map_err(|x| x.to_string()).and_then(|w| {
                    w.equivalent(&c).map(|_| ()).ok_or_else(|| "not equivalent".to_string())
                });
                report.push(&subject, &format!("reflection {i} equivalent"), outcome);
            }
            let words: Vec<Vec<usize>> = (0..s.simple_roots.len()).map(|i| vec![i]).collect();
            report.push(
                &subject,
                "generates",
                weyl::generated_order(s, &words).map_err(|x| x.to_string()).and_then(|o| expect_eq(o, expected)),
            );
        }
        CertificateKind::Pairs => {
            let mut words = Vec::new();
            for (k, pair) in cert.pairs.iter().enumerate() {
                let outcome = (|| -> Result<()> {
                    let word = s.certificate_roots(&pair.weyl, base)?;
                    let w = c.weyl_apply(&word)?;
                    let m = apply_mutation_sequence(&c, &pair.mutations, Side::Left)?;
                    words.push(word);
                    w.equivalent(&m).map(|_| ()).ok_or(Error::Fixture("w(E) and m(E) are not equivalent".into()))
                })();
                report.push(&subject, &format!("pair {k}"), outcome.map_err(|x| x.to_string()));
            }
            let outcome = if words.len() == cert.pairs.len() {
                weyl::generated_order(s, &words).map_err(|x| x.to_string()).and_then(|o| expect_eq(o, expected))
            } else {
                Err("some Weyl words are invalid".into())
            };
            report.push(&subject, "generates", outcome);
        }
    }
}

pub fn verify_certificates_of(tables: &[SurfaceFixtures]) -> CertificateReport {
    let start = Instant::now();
    let mut candidates = Vec::new();
    for base in IndexBase::CANDIDATES {
        let t0 = Instant::now();
        let mut report = Report::default();
        for t in tables {
            for e in &t.entries {
                if let Some(cert) = &e.certificate {
                    certificate_checks(t, e, cert, base, &mut report);
                }
            }
        }
        report.elapsed = t0.elapsed();
        candidates.push((base, report));
    }
    let chosen = candidates.iter().find(|(_, r)| r.passed() && !r.checks.is_empty());
    let index_base = chosen.map(|(b, _)| *b);
    let mut report = chosen.map(|(_, r)| r.clone()).unwrap_or_else(|| candidates[0].1.clone());
    report.elapsed = start.elapsed();
    CertificateReport { index_base, report, candidates }
}

pub fn verify_certificates() -> CertificateReport {
    verify_certificates_of(all())
}
