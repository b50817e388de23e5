//! CSV ingestion and serialization.
//!
//! A corpus lives in one directory: `professors.csv`, `publications.csv`,
//! `authorships.csv`, `salaries.csv`, `field_scheme.csv`, and optionally
//! `baselines.csv`. All files are UTF-8 with a header row. Loading
//! validates everything it can: field types, value ranges, duplicate
//! identifiers, cross-file references, and byline completeness. Errors
//! name the file, line and column.

use std::collections::{HashMap, HashSet};
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::config::DatasetConfig;
use crate::error::{Error, Result};
use crate::model::{
    Authorship, Convention, Dataset, FieldScheme, Professor, Publication, SalaryTable,
};
use crate::normalize::Baselines;

pub const PROFESSORS_FILE: &str = "professors.csv";
pub const PUBLICATIONS_FILE: &str = "publications.csv";
pub const AUTHORSHIPS_FILE: &str = "authorships.csv";
pub const SALARIES_FILE: &str = "salaries.csv";
pub const FIELD_SCHEME_FILE: &str = "field_scheme.csv";
pub const BASELINES_FILE: &str = "baselines.csv";

/// Load and validate a corpus directory. `baselines.csv` is optional;
/// the other five files are required.
pub fn load_dataset(dir: &Path, config: &DatasetConfig) -> Result<Dataset> {
    config.validate()?;

    let field_scheme = load_field_scheme(&dir.join(FIELD_SCHEME_FILE))?;
    let salaries = load_salaries(&dir.join(SALARIES_FILE))?;
    let publications = load_publications(&dir.join(PUBLICATIONS_FILE), config)?;
    let professors = load_professors(&dir.join(PROFESSORS_FILE), config, &field_scheme, &salaries)?;
    let authorships = load_authorships(&dir.join(AUTHORSHIPS_FILE), &publications, &professors)?;

    let baselines_path = dir.join(BASELINES_FILE);
    let baselines = if baselines_path.exists() {
        Some(load_baselines(&baselines_path)?)
    } else {
        None
    };

    Ok(Dataset {
        professors,
        publications,
        authorships,
        field_scheme,
        salaries,
        baselines,
    })
}

/// Write a dataset back out as the same set of CSV files. Floats are
/// written with enough digits to round-trip exactly.
pub fn save_dataset(dataset: &Dataset, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;

    let mut w = writer(&dir.join(PROFESSORS_FILE))?;
    put(
        &mut w,
        dir,
        PROFESSORS_FILE,
        &["id", "university_id", "sds_id", "rank", "years_active"],
    )?;
    for p in &dataset.professors {
        put(
            &mut w,
            dir,
            PROFESSORS_FILE,
            &[
                &p.id,
                &p.university_id,
                &p.sds_id,
                &p.rank,
                &p.years_active.to_string(),
            ],
        )?;
    }
    finish(w, dir, PROFESSORS_FILE)?;

    let mut w = writer(&dir.join(PUBLICATIONS_FILE))?;
    put(
        &mut w,
        dir,
        PUBLICATIONS_FILE,
        &["id", "year", "citations", "doc_type", "subject_categories"],
    )?;
    for p in &dataset.publications {
        put(
            &mut w,
            dir,
            PUBLICATIONS_FILE,
            &[
                &p.id,
                &p.year.to_string(),
                &p.citations.to_string(),
                &p.doc_type,
                &p.subject_categories.join(";"),
            ],
        )?;
    }
    finish(w, dir, PUBLICATIONS_FILE)?;

    let mut w = writer(&dir.join(AUTHORSHIPS_FILE))?;
    put(
        &mut w,
        dir,
        AUTHORSHIPS_FILE,
        &[
            "publication_id",
            "byline_position",
            "total_authors",
            "professor_id",
            "author_university_id",
        ],
    )?;
    for a in &dataset.authorships {
        put(
            &mut w,
            dir,
            AUTHORSHIPS_FILE,
            &[
                &a.publication_id,
                &a.byline_position.to_string(),
                &a.total_authors.to_string(),
                a.professor_id.as_deref().unwrap_or(""),
                a.author_university_id.as_deref().unwrap_or(""),
            ],
        )?;
    }
    finish(w, dir, AUTHORSHIPS_FILE)?;

    let mut w = writer(&dir.join(SALARIES_FILE))?;
    put(&mut w, dir, SALARIES_FILE, &["rank", "yearly_salary"])?;
    for (rank, salary) in dataset.salaries.iter() {
        put(&mut w, dir, SALARIES_FILE, &[rank, &salary.to_string()])?;
    }
    finish(w, dir, SALARIES_FILE)?;

    let mut w = writer(&dir.join(FIELD_SCHEME_FILE))?;
    put(
        &mut w,
        dir,
        FIELD_SCHEME_FILE,
        &["sds_id", "uda_id", "counting_convention"],
    )?;
    for row in &dataset.field_scheme {
        put(
            &mut w,
            dir,
            FIELD_SCHEME_FILE,
            &[&row.sds_id, &row.uda_id, row.convention.as_str()],
        )?;
    }
    finish(w, dir, FIELD_SCHEME_FILE)?;

    if let Some(baselines) = &dataset.baselines {
        save_baselines(baselines, &dir.join(BASELINES_FILE))?;
    }
    Ok(())
}

pub fn save_baselines(baselines: &Baselines, path: &Path) -> Result<()> {
    let file = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| BASELINES_FILE.to_string());
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut w = writer(path)?;
    put(
        &mut w,
        dir,
        &file,
        &["year", "subject_category", "mean_citations_of_cited"],
    )?;
    for (year, category, mean) in baselines.sorted_cells() {
        put(
            &mut w,
            dir,
            &file,
            &[&year.to_string(), category, &mean.to_string()],
        )?;
    }
    finish(w, dir, &file)
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(e),
    })
}

fn put<W: std::io::Write>(
    w: &mut csv::Writer<W>,
    dir: &Path,
    file: &str,
    record: &[&str],
) -> Result<()> {
    w.write_record(record).map_err(|e| Error::Io {
        path: dir.join(file),
        source: std::io::Error::other(e),
    })
}

fn finish(mut w: csv::Writer<std::fs::File>, dir: &Path, file: &str) -> Result<()> {
    w.flush().map_err(|source| Error::Io {
        path: dir.join(file),
        source,
    })
}

/// One parsed CSV record with its header map, for by-name field access
/// with file/line/column error context.
struct Row<'a> {
    file: &'a str,
    line: u64,
    header: &'a HashMap<String, usize>,
    record: &'a csv::StringRecord,
}

impl<'a> Row<'a> {
    fn raw(&self, column: &str) -> Result<&'a str> {
        let index = *self.header.get(column).expect("column checked at header");
        self.record
            .get(index)
            .ok_or_else(|| self.err(column, "missing value"))
    }

    /// Required non-empty string field.
    fn text(&self, column: &str) -> Result<String> {
        let value = self.raw(column)?.trim();
        if value.is_empty() {
            return Err(self.err(column, "value must not be empty"));
        }
        Ok(value.to_string())
    }

    /// Optional string field; empty means absent.
    fn optional(&self, column: &str) -> Result<Option<String>> {
        let value = self.raw(column)?.trim();
        Ok(if value.is_empty() {
            None
        } else {
            Some(value.to_string())
        })
    }

    fn parse<T>(&self, column: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        let raw = self.raw(column)?.trim();
        raw.parse::<T>()
            .map_err(|e| self.err(column, &format!("cannot parse '{raw}': {e}")))
    }

    fn err(&self, column: &str, message: &str) -> Error {
        Error::Parse {
            file: self.file.to_string(),
            line: self.line,
            column: column.to_string(),
            message: message.to_string(),
        }
    }

    fn duplicate(&self, what: &'static str, id: &str) -> Error {
        Error::Duplicate {
            file: self.file.to_string(),
            line: self.line,
            what,
            id: id.to_string(),
        }
    }

    fn dangling(&self, what: &'static str, id: &str) -> Error {
        Error::DanglingReference {
            file: self.file.to_string(),
            line: self.line,
            what,
            id: id.to_string(),
        }
    }
}

/// Read `path`, check its header against `columns`, and hand each record
/// to `each` with name-based field access.
fn for_each_row(
    path: &Path,
    columns: &[&str],
    mut each: impl FnMut(&Row) -> Result<()>,
) -> Result<()> {
    let file = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                let source = match e.into_kind() {
                    csv::ErrorKind::Io(io) => io,
                    _ => unreachable!(),
                };
                Error::Io {
                    path: path.to_path_buf(),
                    source,
                }
            }
            _ => Error::Parse {
                file: file.clone(),
                line: 1,
                column: "-".to_string(),
                message: e.to_string(),
            },
        })?;

    let header_record = reader
        .headers()
        .map_err(|e| Error::Parse {
            file: file.clone(),
            line: 1,
            column: "-".to_string(),
            message: e.to_string(),
        })?
        .clone();

    let mut header = HashMap::new();
    for (index, name) in header_record.iter().enumerate() {
        let name = name.trim();
        if header.insert(name.to_string(), index).is_some() {
            return Err(Error::Parse {
                file,
                line: 1,
                column: name.to_string(),
                message: "duplicate column".to_string(),
            });
        }
        if !columns.contains(&name) {
            return Err(Error::Parse {
                file,
                line: 1,
                column: name.to_string(),
                message: "unknown column".to_string(),
            });
        }
    }
    for column in columns {
        if !header.contains_key(*column) {
            return Err(Error::Parse {
                file,
                line: 1,
                column: column.to_string(),
                message: "missing column".to_string(),
            });
        }
    }

    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::Parse {
                file: file.clone(),
                line,
                column: "-".to_string(),
                message: e.to_string(),
            }
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        each(&Row {
            file: &file,
            line,
            header: &header,
            record: &record,
        })?;
    }
    Ok(())
}

fn load_field_scheme(path: &Path) -> Result<Vec<FieldScheme>> {
    let mut rows = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for_each_row(path, &["sds_id", "uda_id", "counting_convention"], |row| {
        let sds_id = row.text("sds_id")?;
        if !seen.insert(sds_id.clone()) {
            return Err(row.duplicate("SDS", &sds_id));
        }
        let convention: Convention =
            row.parse::<String>("counting_convention").and_then(|raw| {
                Convention::from_str(&raw).map_err(|e| row.err("counting_convention", &e))
            })?;
        rows.push(FieldScheme {
            sds_id,
            uda_id: row.text("uda_id")?,
            convention,
        });
        Ok(())
    })?;
    Ok(rows)
}

fn load_salaries(path: &Path) -> Result<SalaryTable> {
    let mut table = SalaryTable::new();
    for_each_row(path, &["rank", "yearly_salary"], |row| {
        let rank = row.text("rank")?;
        let salary: f64 = row.parse("yearly_salary")?;
        if !salary.is_finite() || salary <= 0.0 {
            return Err(row.err("yearly_salary", "salary must be a positive number"));
        }
        if !table.insert(&rank, salary) {
            return Err(row.duplicate("rank", &rank));
        }
        Ok(())
    })?;
    Ok(table)
}

fn load_publications(path: &Path, config: &DatasetConfig) -> Result<Vec<Publication>> {
    let mut rows = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for_each_row(
        path,
        &["id", "year", "citations", "doc_type", "subject_categories"],
        |row| {
            let id = row.text("id")?;
            if !seen.insert(id.clone()) {
                return Err(row.duplicate("publication id", &id));
            }
            let year: i32 = row.parse("year")?;
            if year > config.window_end {
                return Err(row.err(
                    "year",
                    &format!(
                        "year {year} is after the observation window end {}",
                        config.window_end
                    ),
                ));
            }
            let categories: Vec<String> = row
                .raw("subject_categories")?
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            if categories.is_empty() {
                return Err(row.err("subject_categories", "at least one category is required"));
            }
            rows.push(Publication {
                id,
                year,
                citations: row.parse("citations")?,
                doc_type: row.text("doc_type")?,
                subject_categories: categories,
            });
            Ok(())
        },
    )?;
    Ok(rows)
}

fn load_professors(
    path: &Path,
    config: &DatasetConfig,
    field_scheme: &[FieldScheme],
    salaries: &SalaryTable,
) -> Result<Vec<Professor>> {
    let known_sds: HashSet<&str> = field_scheme.iter().map(|r| r.sds_id.as_str()).collect();
    let window = config.window_years();
    let mut rows = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for_each_row(
        path,
        &["id", "university_id", "sds_id", "rank", "years_active"],
        |row| {
            let id = row.text("id")?;
            if !seen.insert(id.clone()) {
                return Err(row.duplicate("professor id", &id));
            }
            let sds_id = row.text("sds_id")?;
            if !known_sds.contains(sds_id.as_str()) {
                return Err(row.dangling("SDS", &sds_id));
            }
            let rank = row.text("rank")?;
            if !salaries.contains(&rank) {
                return Err(row.dangling("rank", &rank));
            }
            let years_active: u32 = row.parse("years_active")?;
            if years_active < 1 || years_active > window {
                return Err(row.err(
                    "years_active",
                    &format!("must be between 1 and the window length {window}"),
                ));
            }
            rows.push(Professor {
                id,
                university_id: row.text("university_id")?,
                sds_id,
                rank,
                years_active,
            });
            Ok(())
        },
    )?;
    Ok(rows)
}

fn load_authorships(
    path: &Path,
    publications: &[Publication],
    professors: &[Professor],
) -> Result<Vec<Authorship>> {
    let known_publications: HashSet<&str> = publications.iter().map(|p| p.id.as_str()).collect();
    let known_professors: HashSet<&str> = professors.iter().map(|p| p.id.as_str()).collect();

    let mut rows = Vec::new();
    let mut seen_slots: HashSet<(String, u32)> = HashSet::new();
    // publication id -> (declared total, rows seen, first line)
    let mut bylines: HashMap<String, (u32, u32, u64)> = HashMap::new();

    for_each_row(
        path,
        &[
            "publication_id",
            "byline_position",
            "total_authors",
            "professor_id",
            "author_university_id",
        ],
        |row| {
            let publication_id = row.text("publication_id")?;
            if !known_publications.contains(publication_id.as_str()) {
                return Err(row.dangling("publication", &publication_id));
            }
            let total_authors: u32 = row.parse("total_authors")?;
            if total_authors < 1 {
                return Err(row.err("total_authors", "must be at least 1"));
            }
            let byline_position: u32 = row.parse("byline_position")?;
            if byline_position < 1 || byline_position > total_authors {
                return Err(row.err(
                    "byline_position",
                    &format!("must be between 1 and total_authors ({total_authors})"),
                ));
            }
            if !seen_slots.insert((publication_id.clone(), byline_position)) {
                return Err(row.duplicate(
                    "byline position",
                    &format!("{publication_id}#{byline_position}"),
                ));
            }
            let entry =
                bylines
                    .entry(publication_id.clone())
                    .or_insert((total_authors, 0, row.line));
            if entry.0 != total_authors {
                return Err(row.err(
                    "total_authors",
                    &format!(
                        "publication '{publication_id}' declared {} authors elsewhere",
                        entry.0
                    ),
                ));
            }
            entry.1 += 1;

            let professor_id = row.optional("professor_id")?;
            if let Some(professor_id) = &professor_id {
                if !known_professors.contains(professor_id.as_str()) {
                    return Err(row.dangling("professor", professor_id));
                }
            }
            rows.push(Authorship {
                publication_id,
                byline_position,
                total_authors,
                professor_id,
                author_university_id: row.optional("author_university_id")?,
            });
            Ok(())
        },
    )?;

    let file = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    for (publication_id, (declared, seen, first_line)) in &bylines {
        if declared != seen {
            return Err(Error::Parse {
                file,
                line: *first_line,
                column: "total_authors".to_string(),
                message: format!(
                    "publication '{publication_id}' has {seen} byline rows but total_authors says {declared}"
                ),
            });
        }
    }
    Ok(rows)
}

pub fn load_baselines(path: &Path) -> Result<Baselines> {
    let mut baselines = Baselines::new();
    for_each_row(
        path,
        &["year", "subject_category", "mean_citations_of_cited"],
        |row| {
            let year: i32 = row.parse("year")?;
            let category = row.text("subject_category")?;
            let mean: f64 = row.parse("mean_citations_of_cited")?;
            if !mean.is_finite() || mean <= 0.0 {
                return Err(row.err(
                    "mean_citations_of_cited",
                    "baseline must be a positive number",
                ));
            }
            if !baselines.insert(year, &category, mean) {
                return Err(row.duplicate("baseline cell", &format!("{year}/{category}")));
            }
            Ok(())
        },
    )?;
    Ok(baselines)
}
