//! Wire documents exchanged with the command line.
//!
//! Lines are `{"id": string, "class": "even" | "odd" | {"nonsd": partner}}`,
//! segments `{"line": id, "a2": int, "b2": int}` with doubled endpoints, and
//! multisegments arrays of segments. Every document carries its line table;
//! [`resolve`](MultisegmentDoc::resolve) checks references and invariants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::half::HalfInt;
use crate::orbits::BlockSpec;
use crate::segcalc::{CuspLine, LineClass, LineTable, Multisegment, Segment};
use crate::signgraph::SignTuple;
use crate::verdicts::{AdmissibleDatum, DatumEntry, TemperedDatum};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassDoc {
    Named(String),
    NonSelfDual { nonsd: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    pub id: String,
    pub class: ClassDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentDoc {
    pub line: String,
    pub a2: i64,
    pub b2: i64,
}

impl LineDoc {
    fn resolve(&self) -> Result<CuspLine> {
        let class = match &self.class {
            ClassDoc::Named(s) if s == "even" => LineClass::Even,
            ClassDoc::Named(s) if s == "odd" => LineClass::Odd,
            ClassDoc::Named(s) => return Err(validation("line class", format!("unknown class {s:?}"))),
            ClassDoc::NonSelfDual { nonsd } => LineClass::NonSelfDual(nonsd.as_str().into()),
        };
        Ok(CuspLine { id: self.id.as_str().into(), class })
    }

    fn of(line: &CuspLine) -> Self {
        let class = match &line.class {
            LineClass::Even => ClassDoc::Named("even".into()),
            LineClass::Odd => ClassDoc::Named("odd".into()),
            LineClass::NonSelfDual(p) => ClassDoc::NonSelfDual { nonsd: p.to_string() },
        };
        LineDoc { id: line.id.to_string(), class }
    }
}

fn table(lines: &[LineDoc]) -> Result<LineTable> {
    LineTable::new(lines.iter().map(LineDoc::resolve).collect::<Result<Vec<_>>>()?)
}

impl SegmentDoc {
    pub fn resolve(&self, table: &LineTable) -> Result<Segment> {
        Segment::from_doubled(table.get(&self.line)?.clone(), self.a2, self.b2)
    }

    pub fn of(s: &Segment) -> Self {
        SegmentDoc { line: s.line().id.to_string(), a2: s.a().doubled(), b2: s.b().doubled() }
    }
}

/// Lines referenced by `segs` together with their dual partners, sorted by id.
fn lines_of<'a>(segs: impl IntoIterator<Item = &'a Segment>) -> Vec<LineDoc> {
    let mut map = BTreeMap::new();
    for s in segs {
        for l in [s.line().clone(), s.line().conj_dual()] {
            map.entry(l.id.clone()).or_insert(l);
        }
    }
    map.values().map(LineDoc::of).collect()
}

fn resolve_all(docs: &[SegmentDoc], table: &LineTable) -> Result<Vec<Segment>> {
    docs.iter().map(|d| d.resolve(table)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultisegmentDoc {
    pub lines: Vec<LineDoc>,
    pub multisegment: Vec<SegmentDoc>,
}

impl MultisegmentDoc {
    pub fn resolve(&self) -> Result<Multisegment> {
        Ok(Multisegment::new(resolve_all(&self.multisegment, &table(&self.lines)?)?))
    }

    pub fn of(m: &Multisegment) -> Self {
        MultisegmentDoc { lines: lines_of(m.segments()), multisegment: m.segments().iter().map(SegmentDoc::of).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleSegmentDoc {
    pub lines: Vec<LineDoc>,
    pub segment: SegmentDoc,
}

impl SingleSegmentDoc {
    pub fn resolve(&self) -> Result<Segment> {
        self.segment.resolve(&table(&self.lines)?)
    }

    pub fn of(s: &Segment) -> Self {
        SingleSegmentDoc { lines: lines_of([s]), segment: SegmentDoc::of(s) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum BlockDoc {
    L { segment: SegmentDoc },
    Z { segment: SegmentDoc },
    #[serde(rename = "ladder")]
    Ladder { multisegment: Vec<SegmentDoc> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlocksDoc {
    pub lines: Vec<LineDoc>,
    pub blocks: Vec<BlockDoc>,
}

impl BlocksDoc {
    pub fn resolve(&self) -> Result<Vec<BlockSpec>> {
        let t = table(&self.lines)?;
        self.blocks
            .iter()
            .map(|b| {
                let spec = match b {
                    BlockDoc::L { segment } => BlockSpec::L(segment.resolve(&t)?),
                    BlockDoc::Z { segment } => BlockSpec::Z(segment.resolve(&t)?),
                    BlockDoc::Ladder { multisegment } => {
                        BlockSpec::Ladder(Multisegment::new(resolve_all(multisegment, &t)?))
                    }
                };
                spec.validate()?;
                Ok(spec)
            })
            .collect()
    }

    pub fn of(blocks: &[BlockSpec]) -> Self {
        let segs: Vec<&Segment> = blocks
            .iter()
            .flat_map(|b| match b {
                BlockSpec::L(s) | BlockSpec::Z(s) => vec![s],
                BlockSpec::Ladder(m) => m.segments().iter().collect(),
            })
            .collect();
        let blocks = blocks
            .iter()
            .map(|b| match b {
                BlockSpec::L(s) => BlockDoc::L { segment: SegmentDoc::of(s) },
                BlockSpec::Z(s) => BlockDoc::Z { segment: SegmentDoc::of(s) },
                BlockSpec::Ladder(m) => BlockDoc::Ladder { multisegment: m.segments().iter().map(SegmentDoc::of).collect() },
            })
            .collect();
        BlocksDoc { lines: lines_of(segs), blocks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub line: String,
    pub a2: Vec<i64>,
    pub eps: SignTuple,
}

/// An admissible datum, optionally with the `GL` pairs of a tempered datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDoc {
    pub lines: Vec<LineDoc>,
    pub entries: Vec<EntryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gl_pairs: Option<Vec<SegmentDoc>>,
}

impl DatumDoc {
    fn entries(&self, t: &LineTable) -> Result<AdmissibleDatum> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(DatumEntry {
                    line: t.get(&e.line)?.clone(),
                    a: e.a2.iter().map(|&d| HalfInt::from_doubled(d)).collect(),
                    eps: e.eps.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        AdmissibleDatum::new(entries)
    }

    pub fn resolve_admissible(&self) -> Result<AdmissibleDatum> {
        self.entries(&table(&self.lines)?)
    }

    pub fn resolve_tempered(&self) -> Result<TemperedDatum> {
        let t = table(&self.lines)?;
        let gl = resolve_all(self.gl_pairs.as_deref().unwrap_or_default(), &t)?;
        TemperedDatum::new(gl, self.entries(&t)?)
    }

    pub fn of(d: &AdmissibleDatum, gl_pairs: Option<&[Segment]>) -> Self {
        let mut map = BTreeMap::new();
        for e in d.entries() {
            map.entry(e.line.id.clone()).or_insert_with(|| e.line.clone());
        }
        for s in gl_pairs.unwrap_or_default() {
            for l in [s.line().clone(), s.line().conj_dual()] {
                map.entry(l.id.clone()).or_insert(l);
            }
        }
        DatumDoc {
            lines: map.values().map(LineDoc::of).collect(),
            entries: d
                .entries()
                .iter()
                .map(|e| EntryDoc {
                    line: e.line.id.to_string(),
                    a2: e.a.iter().map(|x| x.doubled()).collect(),
                    eps: e.eps.clone(),
                })
                .collect(),
            gl_pairs: gl_pairs.map(|g| g.iter().map(SegmentDoc::of).collect()),
        }
    }
}
