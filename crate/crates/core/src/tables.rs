//! Published orbit tables for `n = 4` and `n = 5`, and their verification
//! against the computed census.
//!
//! Point strings use a compact grammar mirroring the printed tables:
//! tokens are separated by `:`, `_` stands for `n` zeros (the singleton
//! minors of a loopless graph), `1@26` is the value `1` at graded-lex
//! index 26, and `...` is an elided run whose entries are not stated. A run
//! of tokens after `...` is placed by its anchor, or against the end if it
//! has none.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graphstates::{graph_to_point, Graph};
use crate::lagrangian::Lagrangian;
use crate::minorvariety::{index_convert, minor_point, IndexOrder, MinorPoint};
use crate::orbits::Census;
use crate::pauli::StabilizerGroup;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub label: &'static str,
    pub edges: &'static str,
    pub point: &'static str,
    pub generators: Option<&'static str>,
    pub size: Option<u64>,
    pub state_count: Option<u64>,
}

const fn row4(label: &'static str, edges: &'static str, point: &'static str, size: u64, states: u64) -> TableRow {
    TableRow {
        label,
        edges,
        point,
        generators: None,
        size: Some(size),
        state_count: Some(states),
    }
}

const fn row5(label: &'static str, edges: &'static str, point: &'static str, gens: &'static str) -> TableRow {
    TableRow {
        label,
        edges,
        point,
        generators: Some(gens),
        size: None,
        state_count: None,
    }
}

pub const TABLE_4: [TableRow; 6] = [
    row4("O2", "", "1:_:0:0:0:0:0:0:0:0:0:0:0", 81, 20736),
    row4("O3", "1-2", "1:_:1:0:0:0:0:0:0:0:0:0:0", 324, 82944),
    row4("O6", "1-2,2-3", "1:_:1:0:0:1:0:0:0:0:0:0:0", 648, 165888),
    row4("O14", "1-2,1-3,1-4", "1:_:1:1:1:0:0:0:0:0:0:0:0", 162, 41472),
    row4("O17", "1-2,3-4", "1:_:1:0:0:0:0:1:0:0:0:0:1", 108, 27648),
    row4("O18", "1-2,2-3,3-4,1-4", "1:_:1:0:1:1:0:1:0:0:0:0:0", 972, 248832),
];

pub const TABLE_5: [TableRow; 11] = [
    row5("O1", "", "1:0:...:0", "ZIIII,IZIII,IIZII,IIIZI,IIIIZ"),
    row5("O2", "1-2", "1:_:1@6:0:...:0", "ZXIII,XZIII,IIZII,IIIZI,IIIIZ"),
    row5("O3", "1-2,2-3", "1:_:1@6:0:0:0:1:0:...:0", "ZXIII,XZXII,IXZII,IIIZI,IIIIZ"),
    row5(
        "O4",
        "1-2,3-4",
        "1:_:1@6:0:...:0:1@13:0:...:0:1@26:0:...:0",
        "ZXIII,XZIII,IIZXI,IIXZI,IIIIZ",
    ),
    row5(
        "O5",
        "1-2,2-3,3-4",
        "1:_:1@6:0:0:0:1:0:0:1:0:...:0:1@26:0:...:0",
        "ZXIII,XZXII,IXZXI,IIXZI,IIIIZ",
    ),
    row5(
        "O6",
        "1-2,1-5,3-4",
        "1:_:1@6:0:0:1:0:0:0:1:0:...:0:1@26:0:...:0",
        "ZXIIX,XZIII,IIZXI,IIXZI,XIIIZ",
    ),
    row5(
        "O7",
        "1-2,2-3,3-4,4-5",
        "1:_:1@6:0:0:0:1:0:0:1:0:1:0:...:0:1@26:0:1:0:1:0",
        "ZXIII,XZXII,IXZXI,IIXZX,IIIXZ",
    ),
    row5(
        "O8",
        "1-2,2-3,3-4,1-4",
        "1:_:1@6:0:1:0:1:0:0:1:0:...:0",
        "ZXIXI,XZXII,IXZXI,XIXZI,IIIIZ",
    ),
    row5("O9", "1-2,1-3,1-4,1-5", "1:_:1@6:1:1:1:0:...:0", "ZXXXX,XZIII,XIZII,XIIZI,XIIIZ"),
    row5(
        "O10",
        "1-2,2-3,3-4,4-5,1-5",
        "1:_:1@6:0:0:1:1:0:0:1:0:1:0:...:0:1@27:1:1:1:0",
        "ZXIIX,XZXII,IXZXI,IIXZX,XIIXZ",
    ),
    row5("O11", "1-2,1-3,1-4", "1:_:1@6:1:1:0:...:0", "ZXXXI,XZIII,XIZII,XIIZI,IIIIZ"),
];

/// The complete graph on five vertices, listed as a second representative
/// of `O9`.
pub const GHZ_5: (&str, &str) = ("O9", "1-2,1-3,1-4,1-5,2-3,2-4,2-5,3-4,3-5,4-5");

/// A documented disagreement between a printed table and the computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownIssue {
    /// Coordinate `index` (graded-lex) of row `label` is printed as `printed`.
    Coordinate {
        n: usize,
        label: &'static str,
        index: usize,
        printed: bool,
    },
    /// Row `label` lies in the same orbit as the earlier row `other`.
    SharedOrbit {
        n: usize,
        label: &'static str,
        other: &'static str,
    },
    /// The orbit of this size has no row.
    Unrepresented { n: usize, size: u64 },
}

/// The five-cycle has every four-vertex induced subgraph equal to a path on
/// four vertices, so `z_26 = det θ_[1234] = 1`; the printed row anchors its
/// run of ones at 27 and shows `z_26 = 0`.
///
/// A four-cycle and a four-vertex path are related by local
/// complementation, so `O8` (four-cycle plus an isolated vertex) repeats the
/// orbit of `O5` (path plus an isolated vertex). The eleventh orbit, of
/// size 9720 and represented by the tree `1-2,2-5,3-5,4-5`, has no row.
pub const KNOWN_ISSUES: [KnownIssue; 3] = [
    KnownIssue::Coordinate {
        n: 5,
        label: "O10",
        index: 26,
        printed: false,
    },
    KnownIssue::SharedOrbit {
        n: 5,
        label: "O8",
        other: "O5",
    },
    KnownIssue::Unrepresented { n: 5, size: 9720 },
];

pub fn table(n: usize) -> Option<&'static [TableRow]> {
    match n {
        4 => Some(&TABLE_4),
        5 => Some(&TABLE_5),
        _ => None,
    }
}

/// Expands a point string to one optional value per graded-lex index.
pub fn parse_elided(s: &str, n: usize) -> Result<Vec<Option<bool>>> {
    let len = 1usize << n;
    let mut out = vec![None; len];
    let segments: Vec<&str> = s.split("...").collect();
    let mut cursor = 0usize;
    for (si, seg) in segments.iter().enumerate() {
        let mut cells: Vec<(bool, Option<usize>)> = Vec::new();
        for tok in seg.split(':').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "_" => cells.extend(std::iter::repeat_n((false, None), n)),
                "0" => cells.push((false, None)),
                "1" => cells.push((true, None)),
                _ => {
                    let (v, at) = tok
                        .split_once('@')
                        .ok_or_else(|| Error::Parse(format!("bad token {tok:?}")))?;
                    let v = match v {
                        "0" => false,
                        "1" => true,
                        _ => return Err(Error::Parse(format!("bad value in {tok:?}"))),
                    };
                    let at = at
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad anchor in {tok:?}")))?;
                    cells.push((v, Some(at)));
                }
            }
        }
        let anchored = cells.iter().enumerate().find_map(|(i, c)| c.1.map(|a| (i, a)));
        let start = match anchored {
            Some((i, a)) => a
                .checked_sub(i)
                .ok_or_else(|| Error::Parse(format!("anchor {a} too early in {s:?}")))?,
            None if si == 0 => 0,
            None if si + 1 == segments.len() => len
                .checked_sub(cells.len())
                .ok_or_else(|| Error::Parse(format!("too many entries in {s:?}")))?,
            None => return Err(Error::Parse(format!("unanchored inner run in {s:?}"))),
        };
        if start < cursor || start + cells.len() > len {
            return Err(Error::Parse(format!("runs overlap or overflow in {s:?}")));
        }
        if si == 0 && start != 0 {
            return Err(Error::Parse(format!("first run must start at 0 in {s:?}")));
        }
        for (i, &(v, a)) in cells.iter().enumerate() {
            if a.is_some_and(|a| a != start + i) {
                return Err(Error::Parse(format!("inconsistent anchors in {s:?}")));
            }
            out[start + i] = Some(v);
        }
        cursor = start + cells.len();
    }
    if segments.len() == 1 && cursor != len {
        return Err(Error::Parse(format!("expected {len} entries, found {cursor} in {s:?}")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    Coordinate {
        index: usize,
        printed: bool,
        computed: bool,
    },
    OrbitSize {
        printed: u64,
        computed: u64,
    },
    StateCount {
        printed: u64,
        computed: u64,
    },
    Generators {
        detail: String,
    },
    SharedOrbit {
        other: &'static str,
    },
    OrbitCount {
        printed: usize,
        computed: usize,
    },
    Unrepresented {
        orbit_id: usize,
        size: u64,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::Coordinate {
                index,
                printed,
                computed,
            } => write!(
                f,
                "z{index}: printed {}, computed {}",
                u8::from(*printed),
                u8::from(*computed)
            ),
            Finding::OrbitSize { printed, computed } => {
                write!(f, "orbit size: printed {printed}, computed {computed}")
            }
            Finding::StateCount { printed, computed } => {
                write!(f, "state count: printed {printed}, computed 4^n*size = {computed}")
            }
            Finding::Generators { detail } => write!(f, "generators: {detail}"),
            Finding::SharedOrbit { other } => write!(f, "same orbit as {other}"),
            Finding::OrbitCount { printed, computed } => {
                write!(f, "orbit count: printed {printed}, computed {computed}")
            }
            Finding::Unrepresented { orbit_id, size } => {
                write!(f, "orbit {orbit_id} (size {size}) has no row")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReport {
    pub label: &'static str,
    pub edges: &'static str,
    pub orbit_id: usize,
    pub size: u64,
    pub point: MinorPoint,
    pub checked_coordinates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub rows: Vec<RowReport>,
    /// Findings that match [`KNOWN_ISSUES`].
    pub notes: Vec<(&'static str, Finding)>,
    pub discrepancies: Vec<(&'static str, Finding)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = format!("n={}  rows={}\n", self.n, self.rows.len());
        for r in &self.rows {
            out.push_str(&format!(
                "{}\torbit {}\tsize {}\tcoordinates checked {}\t{}\n",
                r.label,
                r.orbit_id,
                r.size,
                r.checked_coordinates,
                if r.edges.is_empty() { "(empty)" } else { r.edges }
            ));
            if verbose {
                out.push_str(&format!("\t{}\n", r.point));
            }
        }
        for (label, f) in &self.notes {
            out.push_str(&format!("note {label}: {f} (documented)\n"));
        }
        for (label, f) in &self.discrepancies {
            out.push_str(&format!("DISCREPANCY {label}: {f}\n"));
        }
        out.push_str(&format!(
            "{}: {} discrepancies, {} documented notes\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.discrepancies.len(),
            self.notes.len()
        ));
        out
    }
}

fn is_known(n: usize, label: &str, f: &Finding) -> bool {
    KNOWN_ISSUES.iter().any(|issue| match (*issue, f) {
        (
            KnownIssue::Coordinate {
                n: kn,
                label: kl,
                index: ki,
                printed: kp,
            },
            Finding::Coordinate { index, printed, .. },
        ) => kn == n && kl == label && ki == *index && kp == *printed,
        (
            KnownIssue::SharedOrbit {
                n: kn,
                label: kl,
                other: ko,
            },
            Finding::SharedOrbit { other },
        ) => kn == n && kl == label && ko == *other,
        (KnownIssue::Unrepresented { n: kn, size: ks }, Finding::Unrepresented { size, .. }) => {
            kn == n && ks == *size
        }
        _ => false,
    })
}

fn check_generators(row: &TableRow, g: &Graph, point: &MinorPoint) -> Option<Finding> {
    let gens = row.generators?;
    let detail = (|| -> Result<Option<String>> {
        let group = StabilizerGroup::parse(gens)?;
        let l = Lagrangian::from_group(&group)?;
        let chart = l.chart_form();
        if !chart.subset.is_empty() || &chart.s != g.theta() {
            return Ok(Some(format!("{gens} does not span [I; theta]")));
        }
        if &minor_point(&l) != point {
            return Ok(Some(format!("{gens} maps to a different point")));
        }
        Ok(None)
    })();
    match detail {
        Ok(None) => None,
        Ok(Some(d)) => Some(Finding::Generators { detail: d }),
        Err(e) => Some(Finding::Generators {
            detail: format!("{gens}: {e}"),
        }),
    }
}

/// Recomputes every printed row from its graph and compares.
pub fn verify(census: &Census) -> Result<VerifyReport> {
    let n = census.n();
    let rows = table(n).ok_or(Error::BoundExceeded { n, bound: 5 })?;
    let mut report = VerifyReport {
        n,
        rows: Vec::new(),
        notes: Vec::new(),
        discrepancies: Vec::new(),
    };
    let record = |report: &mut VerifyReport, label: &'static str, f: Finding| {
        if is_known(n, label, &f) {
            report.notes.push((label, f));
        } else {
            report.discrepancies.push((label, f));
        }
    };
    let mut seen: Vec<(usize, &'static str)> = Vec::new();
    for row in rows {
        let g = Graph::parse(row.edges, n)?;
        let point = graph_to_point(&g)?;
        let printed = parse_elided(row.point, n)?;
        let mut checked = 0;
        for (gl, want) in printed.iter().enumerate() {
            let Some(want) = *want else { continue };
            checked += 1;
            let mask = index_convert(gl, n, IndexOrder::GradedLex, IndexOrder::Bitmask)?;
            let got = point.get(Subset(mask as u64));
            if got != want {
                record(
                    &mut report,
                    row.label,
                    Finding::Coordinate {
                        index: gl,
                        printed: want,
                        computed: got,
                    },
                );
            }
        }
        if let Some(f) = check_generators(row, &g, &point) {
            record(&mut report, row.label, f);
        }
        let class = census.classify_point(&point)?;
        let size = census.report(class.orbit_id).expect("valid id").size;
        if let Some(printed) = row.size {
            if printed != size {
                record(&mut report, row.label, Finding::OrbitSize { printed, computed: size });
            }
        }
        if let Some(printed) = row.state_count {
            let computed = size << (2 * n);
            if printed != computed {
                record(&mut report, row.label, Finding::StateCount { printed, computed });
            }
        }
        if let Some(&(_, other)) = seen.iter().find(|(id, _)| *id == class.orbit_id) {
            record(&mut report, row.label, Finding::SharedOrbit { other });
        }
        seen.push((class.orbit_id, row.label));
        report.rows.push(RowReport {
            label: row.label,
            edges: row.edges,
            orbit_id: class.orbit_id,
            size,
            point,
            checked_coordinates: checked,
        });
    }
    if rows.len() != census.reports().len() {
        record(
            &mut report,
            "table",
            Finding::OrbitCount {
                printed: rows.len(),
                computed: census.reports().len(),
            },
        );
    }
    for r in census.reports() {
        if !report.rows.iter().any(|row| row.orbit_id == r.orbit_id) {
            record(
                &mut report,
                "table",
                Finding::Unrepresented {
                    orbit_id: r.orbit_id,
                    size: r.size,
                },
            );
        }
    }
    if n == 5 {
        let (label, edges) = GHZ_5;
        let id = census.classify_graph(&Graph::parse(edges, n)?)?.orbit_id;
        let expected = report.rows.iter().find(|r| r.label == label).map(|r| r.orbit_id);
        if expected != Some(id) {
            let other = report
                .rows
                .iter()
                .find(|r| r.orbit_id == id)
                .map_or("none", |r| r.label);
            record(&mut report, "K5", Finding::SharedOrbit { other });
        }
    }
    Ok(report)
}

/// Orbit ids of the printed rows, for labelling a census. Rows sharing an
/// orbit are joined with `=`.
pub fn paper_labels(census: &Census) -> Result<Vec<(usize, String)>> {
    let Some(rows) = table(census.n()) else {
        return Ok(Vec::new());
    };
    let mut out: BTreeMap<usize, String> = BTreeMap::new();
    for row in rows {
        let id = census.classify_graph(&Graph::parse(row.edges, census.n())?)?.orbit_id;
        out.entry(id)
            .and_modify(|l| {
                l.push('=');
                l.push_str(row.label);
            })
            .or_insert_with(|| row.label.to_string());
    }
    Ok(out.into_iter().collect())
}
