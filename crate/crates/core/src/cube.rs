//! Data model for a d-dimensional cube over qualitative dimensions.
//!
//! A [`Cube`] is a fact multiset over a [`CubeSchema`]: each fact takes one
//! modality per dimension and optionally carries measure values. The set of
//! distinct fact coordinates is the cube's occupancy (its full cells);
//! everything else is empty. Measures are carried through ingestion and
//! summed per cell, but the analysis itself only looks at presence/absence.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrange::Arrangement;
use crate::error::{Error, Result};

/// One dimension: a name and its ordered modality catalog.
///
/// The catalog order is the dimension's initial arrangement; all coordinates
/// index into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSpec {
    name: String,
    labels: Vec<String>,
}

impl DimensionSpec {
    pub fn new(name: impl Into<String>, labels: Vec<String>) -> Self {
        DimensionSpec {
            name: name.into(),
            labels,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Modality count p_t.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Ordered dimensions plus measure names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSchema {
    dimensions: Vec<DimensionSpec>,
    measures: Vec<String>,
}

impl CubeSchema {
    pub fn new(dimensions: Vec<DimensionSpec>, measures: Vec<String>) -> Result<Self> {
        let schema = CubeSchema {
            dimensions,
            measures,
        };
        schema.validate()?;
        Ok(schema)
    }

    fn validate(&self) -> Result<()> {
        if self.dimensions.is_empty() {
            return Err(Error::InvalidSchema(
                "at least one dimension required".into(),
            ));
        }
        let mut names = HashSet::new();
        for dim in &self.dimensions {
            if !names.insert(dim.name.as_str()) {
                return Err(Error::InvalidSchema(format!(
                    "duplicate dimension name {:?}",
                    dim.name
                )));
            }
            if dim.labels.is_empty() {
                return Err(Error::EmptyDimension {
                    dimension: dim.name.clone(),
                });
            }
            let mut seen = HashSet::new();
            for label in &dim.labels {
                if !seen.insert(label.as_str()) {
                    return Err(Error::InvalidSchema(format!(
                        "dimension {:?} lists modality {:?} twice",
                        dim.name, label
                    )));
                }
            }
        }
        let mut seen = HashSet::new();
        for m in &self.measures {
            if !seen.insert(m.as_str()) {
                return Err(Error::InvalidSchema(format!(
                    "duplicate measure name {m:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn dimensions(&self) -> &[DimensionSpec] {
        &self.dimensions
    }

    pub fn measures(&self) -> &[String] {
        &self.measures
    }

    /// Number of dimensions d.
    pub fn d(&self) -> usize {
        self.dimensions.len()
    }

    /// Modality counts (p_1, ..., p_d).
    pub fn shape(&self) -> Vec<u32> {
        self.dimensions.iter().map(|d| d.len() as u32).collect()
    }

    /// Total modality count p across all dimensions.
    pub fn total_modalities(&self) -> usize {
        self.dimensions.iter().map(|d| d.len()).sum()
    }

    pub fn dimension_index(&self, name: &str) -> Option<usize> {
        self.dimensions.iter().position(|d| d.name == name)
    }

    /// Schema document with every catalog written out explicitly.
    pub fn to_doc(&self) -> SchemaDoc {
        SchemaDoc {
            measures: self.measures.clone(),
            dimensions: self
                .dimensions
                .iter()
                .map(|d| DimensionDoc {
                    name: d.name.clone(),
                    modalities: Some(d.labels.clone()),
                })
                .collect(),
        }
    }
}

/// Schema document as read from disk: dimension columns (each with an
/// optional explicit catalog) and measure columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemaDoc {
    #[serde(default)]
    pub measures: Vec<String>,
    #[serde(default)]
    pub dimensions: Vec<DimensionDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modalities: Option<Vec<String>>,
}

impl SchemaDoc {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::SchemaParse(e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("schema document serializes")
    }
}

/// One observed record: one modality index per dimension (0-based), plus the
/// measure values in schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct Fact {
    pub coords: Vec<u32>,
    pub measures: Vec<f64>,
}

/// Immutable cube: schema, fact multiset, occupancy, per-cell measure sums.
#[derive(Debug, Clone)]
pub struct Cube {
    schema: CubeSchema,
    facts: Vec<Fact>,
    occupancy: HashSet<Vec<u32>>,
    aggregates: BTreeMap<Vec<u32>, Vec<f64>>,
}

impl Cube {
    /// Builds a cube from facts, checking every coordinate against the schema.
    pub fn from_facts(schema: CubeSchema, facts: Vec<Fact>) -> Result<Self> {
        schema.validate()?;
        let d = schema.d();
        let m = schema.measures().len();
        for (row, fact) in facts.iter().enumerate() {
            if fact.coords.len() != d {
                return Err(Error::InvalidSchema(format!(
                    "fact {} has {} coordinates, schema has {} dimensions",
                    row + 1,
                    fact.coords.len(),
                    d
                )));
            }
            for (t, (&j, dim)) in fact.coords.iter().zip(schema.dimensions()).enumerate() {
                if j as usize >= dim.len() {
                    return Err(Error::UnknownModality {
                        row: row + 1,
                        dimension: schema.dimensions()[t].name.clone(),
                        label: format!("#{}", j + 1),
                    });
                }
            }
            if fact.measures.len() != m {
                return Err(Error::InvalidSchema(format!(
                    "fact {} has {} measure values, schema has {} measures",
                    row + 1,
                    fact.measures.len(),
                    m
                )));
            }
        }
        let mut occupancy = HashSet::new();
        let mut aggregates = BTreeMap::new();
        for fact in &facts {
            occupancy.insert(fact.coords.clone());
            let sums = aggregates
                .entry(fact.coords.clone())
                .or_insert_with(|| vec![0.0; m]);
            for (s, v) in sums.iter_mut().zip(&fact.measures) {
                *s += v;
            }
        }
        Ok(Cube {
            schema,
            facts,
            occupancy,
            aggregates,
        })
    }

    pub fn schema(&self) -> &CubeSchema {
        &self.schema
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    /// Fact count n.
    pub fn n(&self) -> usize {
        self.facts.len()
    }

    /// Distinct coordinate tuples of full cells.
    pub fn occupancy(&self) -> &HashSet<Vec<u32>> {
        &self.occupancy
    }

    /// Occupancy in lexicographic coordinate order, for deterministic output.
    pub fn occupancy_sorted(&self) -> Vec<Vec<u32>> {
        let mut cells: Vec<_> = self.occupancy.iter().cloned().collect();
        cells.sort();
        cells
    }

    /// Per-cell measure sums.
    pub fn cell_aggregates(&self) -> &BTreeMap<Vec<u32>, Vec<f64>> {
        &self.aggregates
    }

    pub fn shape(&self) -> Vec<u32> {
        self.schema.shape()
    }

    pub fn is_full(&self, cell: &[u32]) -> bool {
        self.occupancy.contains(cell)
    }

    /// A cube with no facts is legal but degenerate; the analysis refuses it.
    pub fn is_degenerate(&self) -> bool {
        self.facts.is_empty()
    }

    /// Fraction of cube cells that are empty.
    pub fn sparsity(&self) -> f64 {
        let total: f64 = self.shape().iter().map(|&p| p as f64).product();
        (total - self.occupancy.len() as f64) / total
    }

    /// Uniform random subset of ⌈rate·n⌉ facts, drawn without replacement
    /// from a seeded generator. Occupancy is recomputed, so sparsity
    /// typically rises as the rate falls.
    pub fn sample_facts(&self, rate: f64, seed: u64) -> Result<Cube> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidRate { rate });
        }
        let n = self.facts.len();
        let k = ((rate * n as f64).ceil() as usize).min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut keep = rand::seq::index::sample(&mut rng, n, k).into_vec();
        keep.sort_unstable();
        let facts = keep.into_iter().map(|i| self.facts[i].clone()).collect();
        Cube::from_facts(self.schema.clone(), facts)
    }

    /// Reorders every dimension's catalog per the arrangement and re-indexes
    /// the facts consistently. Fact count and occupancy cardinality are
    /// unchanged.
    pub fn apply_arrangement(&self, arrangement: &Arrangement) -> Result<Cube> {
        let perms = arrangement.permutations_for(&self.schema)?;
        let mut dimensions = Vec::with_capacity(self.schema.d());
        let mut inverses = Vec::with_capacity(self.schema.d());
        for (dim, perm) in self.schema.dimensions().iter().zip(&perms) {
            let labels = perm
                .iter()
                .map(|&old| dim.labels[old as usize].clone())
                .collect();
            dimensions.push(DimensionSpec::new(dim.name.clone(), labels));
            let mut inverse = vec![0u32; perm.len()];
            for (new, &old) in perm.iter().enumerate() {
                inverse[old as usize] = new as u32;
            }
            inverses.push(inverse);
        }
        let schema = CubeSchema::new(dimensions, self.schema.measures.clone())?;
        let facts = self
            .facts
            .iter()
            .map(|fact| Fact {
                coords: fact
                    .coords
                    .iter()
                    .zip(&inverses)
                    .map(|(&old, inv)| inv[old as usize])
                    .collect(),
                measures: fact.measures.clone(),
            })
            .collect();
        Cube::from_facts(schema, facts)
    }

    /// Writes the fact table back out as CSV (dimension labels, then measure
    /// values, in schema order).
    pub fn write_fact_table<W: io::Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        let header: Vec<&str> = self
            .schema
            .dimensions()
            .iter()
            .map(|d| d.name())
            .chain(self.schema.measures().iter().map(|m| m.as_str()))
            .collect();
        out.write_record(&header)?;
        for fact in &self.facts {
            let mut record: Vec<String> = fact
                .coords
                .iter()
                .zip(self.schema.dimensions())
                .map(|(&j, dim)| dim.labels[j as usize].clone())
                .collect();
            record.extend(fact.measures.iter().map(|v| v.to_string()));
            out.write_record(&record)?;
        }
        out.flush()?;
        Ok(())
    }
}

impl PartialEq for Cube {
    fn eq(&self, other: &Self) -> bool {
        self.schema == other.schema && self.facts == other.facts
    }
}

/// Loads a cube from a CSV fact stream and a schema document.
///
/// The schema names a subset of the fact-file columns as dimensions and a
/// subset as measures. Catalogs are taken from the schema when listed
/// explicitly, otherwise built from distinct values in file order.
pub fn load_fact_table<R: io::Read>(facts: R, schema: &SchemaDoc) -> Result<Cube> {
    if schema.dimensions.is_empty() {
        return Err(Error::InvalidSchema(
            "at least one dimension required".into(),
        ));
    }

    let mut reader = csv::Reader::from_reader(facts);
    let headers = reader.headers()?.clone();
    let column_of = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::UnknownColumn {
                column: name.to_string(),
            })
    };

    struct DimState {
        column: usize,
        labels: Vec<String>,
        index: HashMap<String, u32>,
        explicit: bool,
    }

    let mut dims = Vec::with_capacity(schema.dimensions.len());
    for doc in &schema.dimensions {
        let column = column_of(&doc.name)?;
        let (labels, explicit) = match &doc.modalities {
            Some(list) => (list.clone(), true),
            None => (Vec::new(), false),
        };
        let mut index = HashMap::with_capacity(labels.len());
        for (j, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), j as u32).is_some() {
                return Err(Error::InvalidSchema(format!(
                    "dimension {:?} lists modality {:?} twice",
                    doc.name, label
                )));
            }
        }
        dims.push(DimState {
            column,
            labels,
            index,
            explicit,
        });
    }
    let measure_columns: Vec<usize> = schema
        .measures
        .iter()
        .map(|m| column_of(m))
        .collect::<Result<_>>()?;

    let mut facts_out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let mut coords = Vec::with_capacity(dims.len());
        for (doc, dim) in schema.dimensions.iter().zip(dims.iter_mut()) {
            let label = record.get(dim.column).unwrap_or("");
            let j = match dim.index.get(label) {
                Some(&j) => j,
                None if dim.explicit => {
                    return Err(Error::UnknownModality {
                        row,
                        dimension: doc.name.clone(),
                        label: label.to_string(),
                    });
                }
                None => {
                    let j = dim.labels.len() as u32;
                    dim.labels.push(label.to_string());
                    dim.index.insert(label.to_string(), j);
                    j
                }
            };
            coords.push(j);
        }
        let mut measures = Vec::with_capacity(measure_columns.len());
        for (name, &col) in schema.measures.iter().zip(&measure_columns) {
            let raw = record.get(col).unwrap_or("");
            let value: f64 = raw.trim().parse().map_err(|_| Error::NonNumericMeasure {
                row,
                column: name.clone(),
                value: raw.to_string(),
            })?;
            measures.push(value);
        }
        facts_out.push(Fact { coords, measures });
    }

    let dimensions = schema
        .dimensions
        .iter()
        .zip(dims)
        .map(|(doc, state)| {
            if state.labels.is_empty() {
                Err(Error::EmptyDimension {
                    dimension: doc.name.clone(),
                })
            } else {
                Ok(DimensionSpec::new(doc.name.clone(), state.labels))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let cube_schema = CubeSchema::new(dimensions, schema.measures.clone())?;
    Cube::from_facts(cube_schema, facts_out)
}

/// Convenience wrapper reading both documents from disk.
pub fn load_fact_table_path(fact_path: &Path, schema_path: &Path) -> Result<Cube> {
    let schema_text = std::fs::read_to_string(schema_path)?;
    let schema = SchemaDoc::from_toml_str(&schema_text)?;
    let file = std::fs::File::open(fact_path)?;
    load_fact_table(io::BufReader::new(file), &schema)
}
