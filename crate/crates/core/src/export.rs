//! The serialized block-diagonalization bundle.
//!
//! Files written to the output directory:
//!
//! * `manifest.json`: parameters, counts, eigenvalues in Q-polynomial order.
//! * `upsilon.csv`: `mu,d,block_dim,multiplicity`, one row per class.
//! * `blocks.json`: the block of every orbit basis element on every class.
//! * `structure_constants.{json,csv}`: nonzero `N[a][b][c]`.
//! * `change_of_basis.{json,csv}` (and `change_of_basis_columns.csv` for CSV):
//!   the orthogonal b-vector columns with their squared norms.
//!
//! Rationals are canonical strings (see [`format_rational`]). Matrix entries
//! are `(row, col, value)` triplets in row-major order. Lists follow fixed
//! orders, so the bytes depend only on `m` and the format.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::terwilliger::TerwilligerAlgebra;
use crate::TripleType;

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}, expected json or csv"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub m: usize,
    pub vertex_count: usize,
    pub algebra_dimension: usize,
    pub upsilon_size: usize,
    pub vector_count: usize,
    pub block_square_sum: usize,
    pub center_dimension: usize,
    /// Eigenvalues of `A_1` in Q-polynomial order.
    pub eigenvalues: Vec<i64>,
    /// Multiplicities in the same order.
    pub multiplicities: Vec<usize>,
    /// Position of each `E_k` in ascending-eigenvalue order.
    pub q_ordering: Vec<usize>,
    pub format: Format,
    pub files: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpsilonRecord {
    pub mu: usize,
    pub d: usize,
    pub block_dim: usize,
    pub multiplicity: usize,
}

/// `(row, col, value)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry(pub usize, pub usize, #[serde(with = "rational_string")] pub Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct EntryRecord {
    row: usize,
    col: usize,
    #[serde(with = "rational_string")]
    value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementBlocks {
    /// `[i, j, t, p]`.
    pub label: [usize; 4],
    /// One entry list per class, in upsilon order.
    pub blocks: Vec<Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksFile {
    /// `[mu, d]` per class.
    pub classes: Vec<[usize; 2]>,
    pub elements: Vec<ElementBlocks>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantRecord {
    pub a_i: usize,
    pub a_j: usize,
    pub a_t: usize,
    pub a_p: usize,
    pub b_i: usize,
    pub b_j: usize,
    pub b_t: usize,
    pub b_p: usize,
    pub c_i: usize,
    pub c_j: usize,
    pub c_t: usize,
    pub c_p: usize,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRecord {
    pub col: usize,
    pub mu: usize,
    pub d: usize,
    pub copy: usize,
    pub sphere: usize,
    #[serde(with = "rational_string")]
    pub squared_norm: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeOfBasis {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<ColumnRecord>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExportBundle {
    pub manifest: Manifest,
    pub upsilon: Vec<UpsilonRecord>,
    pub blocks: BlocksFile,
    pub structure_constants: Vec<StructureConstantRecord>,
    pub change_of_basis: ChangeOfBasis,
}

fn entries(m: &RationalMatrix) -> Vec<Entry> {
    m.triplets().map(|(r, c, v)| Entry(r, c, v.clone())).collect()
}

fn label(tt: TripleType) -> [usize; 4] {
    tt.as_array()
}

fn file_names(format: Format) -> Vec<String> {
    let ext = format.extension();
    let mut files = vec![
        "manifest.json".to_string(),
        "upsilon.csv".to_string(),
        "blocks.json".to_string(),
        format!("structure_constants.{ext}"),
        format!("change_of_basis.{ext}"),
    ];
    if format == Format::Csv {
        files.push("change_of_basis_columns.csv".to_string());
    }
    files
}

impl ExportBundle {
    pub fn new(alg: &TerwilligerAlgebra, dec: &Decomposition, format: Format) -> Self {
        let m = alg.m();
        let sd = &dec.spectral;
        let report = &dec.report;
        let manifest = Manifest {
            m,
            vertex_count: alg.ctx.vertex_count(),
            algebra_dimension: alg.orbit_basis.len(),
            upsilon_size: dec.upsilon.len(),
            vector_count: report.vector_count,
            block_square_sum: report.block_square_sum,
            center_dimension: report.center_dimension,
            eigenvalues: sd.ordered_eigenvalues(),
            multiplicities: (0..=m).map(|k| sd.ordered_multiplicity(k)).collect(),
            q_ordering: sd.q_ordering.clone(),
            format,
            files: file_names(format),
        };
        let upsilon = report
            .rows
            .iter()
            .map(|r| UpsilonRecord { mu: r.mu, d: r.d, block_dim: r.block_dim, multiplicity: r.multiplicity })
            .collect();
        let blocks = BlocksFile {
            classes: dec.upsilon.pairs().iter().map(|&(mu, d)| [mu, d]).collect(),
            elements: alg
                .orbit_basis
                .elements()
                .iter()
                .zip(&dec.blocks.blocks)
                .map(|(e, per_class)| ElementBlocks { label: label(e.label), blocks: per_class.iter().map(entries).collect() })
                .collect(),
        };
        let ob = &alg.orbit_basis;
        let sc = &alg.structure;
        let mut structure_constants = Vec::new();
        for a in 0..sc.size() {
            for b in 0..sc.size() {
                for &(c, value) in sc.entries(a, b) {
                    let [a_i, a_j, a_t, a_p] = label(ob.element(a).label);
                    let [b_i, b_j, b_t, b_p] = label(ob.element(b).label);
                    let [c_i, c_j, c_t, c_p] = label(ob.element(c as usize).label);
                    structure_constants.push(StructureConstantRecord {
                        a_i, a_j, a_t, a_p, b_i, b_j, b_t, b_p, c_i, c_j, c_t, c_p, value,
                    });
                }
            }
        }

        let mut columns = Vec::new();
        let mut triplets = Vec::new();
        for c in &dec.components {
            for (copy, module) in c.modules.iter().enumerate() {
                for (v, norm) in module.vectors.iter().zip(&module.squared_norms) {
                    let col = columns.len();
                    for (&x, value) in alg.ctx.sphere(v.sphere()).iter().zip(v.entries()) {
                        triplets.push((x, col, Rational::from_integer(value.clone())));
                    }
                    columns.push(ColumnRecord {
                        col,
                        mu: c.mu,
                        d: c.d,
                        copy,
                        sphere: v.sphere(),
                        squared_norm: Rational::from_integer(norm.clone()),
                    });
                }
            }
        }
        let n = alg.ctx.vertex_count();
        let matrix = RationalMatrix::from_triplets(n, columns.len(), triplets).expect("in range");
        let change_of_basis = ChangeOfBasis { rows: n, cols: columns.len(), columns, entries: entries(&matrix) };
        ExportBundle { manifest, upsilon, blocks, structure_constants, change_of_basis }
    }

    /// Writes every file; returns the paths in manifest order.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let format = self.manifest.format;
        let ext = format.extension();
        let mut written = Vec::new();
        let mut put = |name: &str, bytes: Vec<u8>| -> Result<()> {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
            written.push(path);
            Ok(())
        };
        put("manifest.json", json_bytes(&self.manifest)?)?;
        put("upsilon.csv", csv_bytes(&self.upsilon)?)?;
        put("blocks.json", json_bytes(&self.blocks)?)?;
        match format {
            Format::Json => {
                put(&format!("structure_constants.{ext}"), json_bytes(&self.structure_constants)?)?;
                put(&format!("change_of_basis.{ext}"), json_bytes(&self.change_of_basis)?)?;
            }
            Format::Csv => {
                put(&format!("structure_constants.{ext}"), csv_bytes(&self.structure_constants)?)?;
                let records: Vec<EntryRecord> = self
                    .change_of_basis
                    .entries
                    .iter()
                    .map(|Entry(row, col, value)| EntryRecord { row: *row, col: *col, value: value.clone() })
                    .collect();
                put(&format!("change_of_basis.{ext}"), csv_bytes(&records)?)?;
                put("change_of_basis_columns.csv", csv_bytes(&self.change_of_basis.columns)?)?;
            }
        }
        Ok(written)
    }

    /// Parses a bundle written by [`ExportBundle::write`] and checks that the
    /// files agree with the manifest.
    pub fn read(dir: &Path) -> Result<Self> {
        let manifest: Manifest = read_json(&dir.join("manifest.json"))?;
        let ext = manifest.format.extension();
        let upsilon: Vec<UpsilonRecord> = read_csv(&dir.join("upsilon.csv"))?;
        let blocks: BlocksFile = read_json(&dir.join("blocks.json"))?;
        let sc_path = dir.join(format!("structure_constants.{ext}"));
        let cob_path = dir.join(format!("change_of_basis.{ext}"));
        let (structure_constants, change_of_basis) = match manifest.format {
            Format::Json => (read_json(&sc_path)?, read_json(&cob_path)?),
            Format::Csv => {
                let records: Vec<EntryRecord> = read_csv(&cob_path)?;
                let columns: Vec<ColumnRecord> = read_csv(&dir.join("change_of_basis_columns.csv"))?;
                let cob = ChangeOfBasis {
                    rows: manifest.vertex_count,
                    cols: columns.len(),
                    columns,
                    entries: records.into_iter().map(|r| Entry(r.row, r.col, r.value)).collect(),
                };
                (read_csv(&sc_path)?, cob)
            }
        };
        let bundle = ExportBundle { manifest, upsilon, blocks, structure_constants, change_of_basis };
        bundle.check_consistency()?;
        Ok(bundle)
    }

    /// Counts in every file match the manifest.
    pub fn check_consistency(&self) -> Result<()> {
        let man = &self.manifest;
        let fail = |what: &str| Err(Error::parse("bundle", format!("{what} disagrees with the manifest")));
        if self.upsilon.len() != man.upsilon_size || self.blocks.classes.len() != man.upsilon_size {
            return fail("class count");
        }
        if self.blocks.elements.len() != man.algebra_dimension {
            return fail("element count");
        }
        if self.blocks.elements.iter().any(|e| e.blocks.len() != man.upsilon_size) {
            return fail("blocks per element");
        }
        let vectors: usize = self.upsilon.iter().map(|r| r.multiplicity * r.block_dim).sum();
        if vectors != man.vector_count || self.change_of_basis.cols != man.vector_count {
            return fail("vector count");
        }
        if self.change_of_basis.rows != man.vertex_count || self.change_of_basis.columns.len() != man.vector_count {
            return fail("change of basis shape");
        }
        let squares: usize = self.upsilon.iter().map(|r| r.block_dim * r.block_dim).sum();
        if squares != man.block_square_sum || squares != man.algebra_dimension {
            return fail("block dimension sum");
        }
        if man.eigenvalues.len() != man.m + 1 || man.multiplicities.iter().sum::<usize>() != man.vertex_count {
            return fail("spectrum");
        }
        Ok(())
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| Error::parse("json output", e))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| Error::parse("csv output", e))?;
    }
    writer.into_inner().map_err(|e| Error::parse("csv output", e.to_string()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| Error::parse(path.display().to_string(), e))
}

fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    csv::Reader::from_reader(bytes.as_slice())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::parse(path.display().to_string(), e))
}
