//! Whole-pipeline checks against hand-computed corpora: CSV in, CSV out,
//! every number derived on paper first.

use std::fs;
use std::path::{Path, PathBuf};

use fssrank::config::DatasetConfig;
use fssrank::indicators::{Indicator, Scoreboard};
use fssrank::model::{apply_filters, Scope};
use fssrank::normalize::build_baselines;
use fssrank::report::{cmd_compare, cmd_compute, BaselineMode, RunSpec};
use fssrank::synth::{generate, SynthSpec};

fn write_corpus(dir: &Path, files: &[(&str, &str)]) {
    fs::create_dir_all(dir).unwrap();
    for (name, content) in files {
        fs::write(dir.join(name), content).unwrap();
    }
}

fn open_thresholds() -> DatasetConfig {
    DatasetConfig {
        min_staff_sds: 1,
        min_staff_uda: 1,
        min_staff_overall: 1,
        ..DatasetConfig::default()
    }
}

fn run_spec(data: PathBuf, out: PathBuf, indicator: Indicator, scopes: Vec<Scope>) -> RunSpec {
    RunSpec {
        data_dir: data,
        out_dir: out,
        config: open_thresholds(),
        indicator,
        scopes,
        baselines: BaselineMode::Auto,
    }
}

/// indicator → entity → value, from one scores CSV.
fn read_scores(path: &Path) -> Vec<(String, String, f64)> {
    let content = fs::read_to_string(path).unwrap();
    content
        .lines()
        .skip(1)
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            (
                fields[0].to_string(),
                fields[4].to_string(),
                fields[5].parse().unwrap(),
            )
        })
        .collect()
}

fn lookup(scores: &[(String, String, f64)], indicator: &str, entity: &str) -> f64 {
    scores
        .iter()
        .find(|(i, e, _)| i == indicator && e == entity)
        .unwrap_or_else(|| panic!("no {indicator} row for {entity}"))
        .2
}

fn assert_close(got: f64, want: f64, what: &str) {
    let tolerance = 1e-12 * want.abs().max(1.0);
    assert!(
        (got - want).abs() <= tolerance,
        "{what}: {got} vs expected {want}"
    );
}

/// Two universities, two fields under one area, mixed conventions, a
/// two-category publication, an uncited one, and an external-heavy
/// byline; every score below is worked out by hand from the raw rules.
///
/// Shares: the three-author byline opens and closes at UA, so its
/// position-weighted credits are (0.40, 0.20, 0.40); the four-author one
/// spans two universities, so raw (0.30, 0.15, 0.15, 0.30) renormalize
/// to (1/3, 1/6, 1/6, 1/3). Impacts: 6 citations against baselines
/// {4, 8} give 6 / 6 = 1; 10 against 5 give 2; uncited gives 0; 9
/// against 3 give 3.
const GOLDEN: [(&str, &str); 6] = [
    (
        "professors.csv",
        "id,university_id,sds_id,rank,years_active\n\
         p1,UA,S1,full,5\n\
         p2,UA,S1,assistant,5\n\
         p3,UB,S1,full,5\n\
         p4,UA,S2,associate,4\n\
         p5,UB,S2,associate,4\n",
    ),
    (
        "publications.csv",
        "id,year,citations,doc_type,subject_categories\n\
         Q1,2010,6,article,PHY;CHE\n\
         Q2,2011,10,article,PHY\n\
         Q3,2011,0,article,PHY\n\
         Q4,2012,9,article,CHE\n",
    ),
    (
        "authorships.csv",
        "publication_id,byline_position,total_authors,professor_id,author_university_id\n\
         Q1,1,3,p1,UA\n\
         Q1,2,3,,\n\
         Q1,3,3,p2,UA\n\
         Q2,1,4,p3,UB\n\
         Q2,2,4,p1,UA\n\
         Q2,3,4,,EXT_X\n\
         Q2,4,4,,EXT_Y\n\
         Q3,1,1,p2,UA\n\
         Q4,1,2,p4,UA\n\
         Q4,2,2,p5,UB\n",
    ),
    (
        "salaries.csv",
        "rank,yearly_salary\nfull,70000\nassistant,35000\nassociate,50000\n",
    ),
    (
        "field_scheme.csv",
        "sds_id,uda_id,counting_convention\n\
         S1,D1,position-weighted\n\
         S2,D1,alphabetical\n",
    ),
    (
        "baselines.csv",
        "year,subject_category,mean_citations_of_cited\n\
         2010,PHY,4\n\
         2010,CHE,8\n\
         2011,PHY,5\n\
         2012,CHE,3\n",
    ),
];

#[test]
fn hand_computed_corpus_reproduces_through_the_csv_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    write_corpus(&data, &GOLDEN);

    for indicator in [Indicator::Fss, Indicator::Mncs] {
        let out = tmp.path().join(format!("out_{}", indicator.as_str()));
        let spec = run_spec(data.clone(), out.clone(), indicator, Scope::ALL.to_vec());
        cmd_compute(&spec).unwrap();

        let professor = read_scores(&out.join("scores_professor.csv"));
        let sds = read_scores(&out.join("scores_sds.csv"));
        let uda = read_scores(&out.join("scores_uda.csv"));
        let overall = read_scores(&out.join("scores_overall.csv"));

        match indicator {
            Indicator::Fss => {
                // Credited impact per euro of salary per year.
                assert_close(
                    lookup(&professor, "FSS_P", "p1"),
                    (11.0 / 15.0) / 350_000.0,
                    "p1",
                );
                assert_close(lookup(&professor, "FSS_P", "p2"), 0.4 / 175_000.0, "p2");
                assert_close(
                    lookup(&professor, "FSS_P", "p3"),
                    (2.0 / 3.0) / 350_000.0,
                    "p3",
                );
                assert_close(lookup(&professor, "FSS_P", "p4"), 1.5 / 200_000.0, "p4");
                assert_close(lookup(&professor, "FSS_P", "p5"), 1.5 / 200_000.0, "p5");

                // S1's productive mean equals p1's score, so the
                // standardized staff scores are 1, 12/11 and 10/11.
                assert_close(
                    lookup(&sds, "FSS_UP", "UA:S1"),
                    23.0 / 22.0,
                    "UA:S1 method A",
                );
                assert_close(
                    lookup(&sds, "FSS_UP", "UB:S1"),
                    10.0 / 11.0,
                    "UB:S1 method A",
                );
                assert_close(lookup(&sds, "FSS_UP", "UA:S2"), 1.0, "UA:S2 method A");
                assert_close(lookup(&sds, "FSS_UP", "UB:S2"), 1.0, "UB:S2 method A");
                assert_close(
                    lookup(&sds, "FSS_S", "UA:S1"),
                    (17.0 / 15.0) / 525_000.0,
                    "UA:S1 method B",
                );
                assert_close(
                    lookup(&sds, "FSS_S", "UB:S1"),
                    (2.0 / 3.0) / 350_000.0,
                    "UB:S1 method B",
                );
                assert_close(
                    lookup(&sds, "FSS_S", "UA:S2"),
                    1.5 / 200_000.0,
                    "UA:S2 method B",
                );

                for (scores, label_a, label_b) in [(&uda, "UA:D1", "UB:D1"), (&overall, "UA", "UB")]
                {
                    assert_close(
                        lookup(scores, "FSS_UP", label_a),
                        34.0 / 33.0,
                        "UA method A",
                    );
                    assert_close(
                        lookup(scores, "FSS_UP", label_b),
                        21.0 / 22.0,
                        "UB method A",
                    );
                    assert_close(
                        lookup(scores, "FSS_US", label_a),
                        811.0 / 783.0,
                        "UA method B",
                    );
                    assert_close(
                        lookup(scores, "FSS_US", label_b),
                        283.0 / 297.0,
                        "UB method B",
                    );
                }
            }
            Indicator::Mncs => {
                assert_close(lookup(&professor, "MNCS_P", "p1"), 1.5, "p1");
                assert_close(lookup(&professor, "MNCS_P", "p2"), 0.5, "p2");
                assert_close(lookup(&professor, "MNCS_P", "p3"), 2.0, "p3");
                assert_close(lookup(&professor, "MNCS_P", "p4"), 3.0, "p4");
                assert_close(lookup(&professor, "MNCS_P", "p5"), 3.0, "p5");

                assert_close(lookup(&sds, "MNCS_UP", "UA:S1"), 1.0, "UA:S1 method A");
                assert_close(lookup(&sds, "MNCS_UP", "UB:S1"), 2.0, "UB:S1 method A");
                // Pooled over the unit's three distinct publications.
                assert_close(lookup(&sds, "MNCS_S", "UA:S1"), 1.0, "UA:S1 method B");
                assert_close(lookup(&sds, "MNCS_S", "UB:S1"), 2.0, "UB:S1 method B");
                assert_close(lookup(&sds, "MNCS_S", "UA:S2"), 3.0, "UA:S2 method B");
            }
        }
    }
}

/// A shared publication must enter the unit pool once, not once per
/// co-authoring member: two staff on the same cited paper, plus one
/// uncited solo paper, pool to (2 + 0) / 2, not (2 + 2 + 0) / 3.
#[test]
fn unit_pooling_counts_distinct_publications_once() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    write_corpus(
        &data,
        &[
            (
                "professors.csv",
                "id,university_id,sds_id,rank,years_active\n\
                 r1,U,S,full,5\n\
                 r2,U,S,full,5\n\
                 other,V,S,full,5\n",
            ),
            (
                "publications.csv",
                "id,year,citations,doc_type,subject_categories\n\
                 X,2010,4,article,C\n\
                 Y,2010,0,article,C\n\
                 Z,2010,2,article,C\n",
            ),
            (
                "authorships.csv",
                "publication_id,byline_position,total_authors,professor_id,author_university_id\n\
                 X,1,2,r1,U\n\
                 X,2,2,r2,U\n\
                 Y,1,1,r1,U\n\
                 Z,1,1,other,V\n",
            ),
            ("salaries.csv", "rank,yearly_salary\nfull,70000\n"),
            (
                "field_scheme.csv",
                "sds_id,uda_id,counting_convention\nS,D,alphabetical\n",
            ),
            (
                "baselines.csv",
                "year,subject_category,mean_citations_of_cited\n2010,C,2\n",
            ),
        ],
    );
    let out = tmp.path().join("out");
    let spec = run_spec(data, out.clone(), Indicator::Mncs, vec![Scope::Sds]);
    cmd_compute(&spec).unwrap();
    let sds = read_scores(&out.join("scores_sds.csv"));
    assert_close(
        lookup(&sds, "MNCS_S", "U:S"),
        1.0,
        "distinct-publication pool",
    );
    // Per professor the same rows average per authorship: (2 + 0) / 2
    // and 2, so method A gives 1.5 and would expose double counting too.
    assert_close(lookup(&sds, "MNCS_UP", "U:S"), 1.5, "member average");
}

/// With one professor per university, the unit score is that professor's
/// score and method A is its national standardization — a monotone map,
/// so the two rankings must coincide exactly.
#[test]
fn one_professor_universities_rank_identically_under_both_methods() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    let mut professors = String::from("id,university_id,sds_id,rank,years_active\n");
    let mut publications = String::from("id,year,citations,doc_type,subject_categories\n");
    let mut authorships = String::from(
        "publication_id,byline_position,total_authors,professor_id,author_university_id\n",
    );
    for i in 1..=5 {
        professors.push_str(&format!("z{i},V{i},S,full,5\n"));
        publications.push_str(&format!("W{i},2010,{},article,C\n", 2 * i));
        authorships.push_str(&format!("W{i},1,1,z{i},V{i}\n"));
    }
    write_corpus(
        &data,
        &[
            ("professors.csv", professors.as_str()),
            ("publications.csv", publications.as_str()),
            ("authorships.csv", authorships.as_str()),
            ("salaries.csv", "rank,yearly_salary\nfull,70000\n"),
            (
                "field_scheme.csv",
                "sds_id,uda_id,counting_convention\nS,D,position-weighted\n",
            ),
            (
                "baselines.csv",
                "year,subject_category,mean_citations_of_cited\n2010,C,4\n",
            ),
        ],
    );
    let out = tmp.path().join("out");
    let spec = run_spec(data, out.clone(), Indicator::Fss, vec![Scope::Sds]);
    cmd_compare(&spec).unwrap();

    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    let row: Vec<&str> = summary.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "sds");
    assert_eq!(row[1], "5", "population");
    assert_eq!(row[2].parse::<f64>().unwrap(), 0.0, "pct shifting");
    assert_eq!(row[9].parse::<f64>().unwrap(), 1.0, "rho");
}

/// Averaging member means rewards a lone highly-cited paper; pooling
/// dilutes it. Built so the two methods disagree completely: U1 wins on
/// member averages (2.5 vs 2), U2 on the pooled portfolio (2 vs 1.75).
#[test]
fn pooling_versus_averaging_can_invert_a_ranking() {
    let tmp = tempfile::tempdir().unwrap();
    let data = tmp.path().join("data");
    write_corpus(
        &data,
        &[
            (
                "professors.csv",
                "id,university_id,sds_id,rank,years_active\n\
                 a1,U1,S,full,5\n\
                 a2,U1,S,full,5\n\
                 b1,U2,S,full,5\n\
                 b2,U2,S,full,5\n",
            ),
            (
                "publications.csv",
                "id,year,citations,doc_type,subject_categories\n\
                 A1,2010,8,article,C\n\
                 B1,2010,2,article,C\n\
                 B2,2010,2,article,C\n\
                 B3,2010,2,article,C\n\
                 C1,2010,4,article,C\n\
                 C2,2010,4,article,C\n",
            ),
            (
                "authorships.csv",
                "publication_id,byline_position,total_authors,professor_id,author_university_id\n\
                 A1,1,1,a1,U1\n\
                 B1,1,1,a2,U1\n\
                 B2,1,1,a2,U1\n\
                 B3,1,1,a2,U1\n\
                 C1,1,1,b1,U2\n\
                 C2,1,1,b2,U2\n",
            ),
            ("salaries.csv", "rank,yearly_salary\nfull,70000\n"),
            (
                "field_scheme.csv",
                "sds_id,uda_id,counting_convention\nS,D,alphabetical\n",
            ),
            (
                "baselines.csv",
                "year,subject_category,mean_citations_of_cited\n2010,C,2\n",
            ),
        ],
    );
    let out = tmp.path().join("out");
    let spec = run_spec(data, out.clone(), Indicator::Mncs, vec![Scope::Sds]);
    cmd_compare(&spec).unwrap();

    let comparison = fs::read_to_string(out.join("comparison_sds.csv")).unwrap();
    let mut lines = comparison.lines();
    assert_eq!(
        lines.next().unwrap(),
        "entity,value_A,rank_A,pct_A,value_B,rank_B,pct_B,rank_shift,pct_shift"
    );
    let u1: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(u1[0], "U1:S");
    assert_eq!(u1[1].parse::<f64>().unwrap(), 2.5);
    assert_eq!(u1[2], "1");
    assert_eq!(u1[4].parse::<f64>().unwrap(), 1.75);
    assert_eq!(u1[5], "2");
    assert_eq!(u1[7], "-1");
    let u2: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(u2[0], "U2:S");
    assert_eq!(u2[1].parse::<f64>().unwrap(), 2.0);
    assert_eq!(u2[7], "1");

    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    let row: Vec<&str> = summary.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[2].parse::<f64>().unwrap(), 100.0, "pct shifting");
    assert_eq!(row[9].parse::<f64>().unwrap(), -1.0, "rho");
}

/// Impacts are citation ratios, so rescaling every citation count by a
/// common factor (baselines rebuilt from the corpus) changes nothing.
#[test]
fn scores_are_invariant_under_uniform_citation_scaling() {
    let config = DatasetConfig::default();
    let spec = SynthSpec {
        seed: 21,
        ..SynthSpec::default()
    };
    let raw = generate(&spec, &config).unwrap();
    let (dataset, _) = apply_filters(&raw, &config);

    let mut rescaled = dataset.clone();
    for publication in &mut rescaled.publications {
        publication.citations *= 3;
    }
    let baselines = build_baselines(&dataset.publications);
    let baselines_rescaled = build_baselines(&rescaled.publications);

    let board = Scoreboard::new(&dataset, &config, &baselines).unwrap();
    let board_rescaled = Scoreboard::new(&rescaled, &config, &baselines_rescaled).unwrap();
    let mut compared = 0usize;
    for family in [Indicator::Fss, Indicator::Mncs] {
        let base = board.all_scores(family, &Scope::ALL).unwrap();
        let alt = board_rescaled.all_scores(family, &Scope::ALL).unwrap();
        assert_eq!(base.len(), alt.len());
        for (x, y) in base.iter().zip(&alt) {
            assert_eq!((x.indicator, &x.entity_id), (y.indicator, &y.entity_id));
            let tolerance = 1e-12 * x.value.abs().max(1.0);
            assert!(
                (x.value - y.value).abs() <= tolerance,
                "{} {}: {} vs {}",
                x.indicator,
                x.entity_id,
                x.value,
                y.value
            );
            compared += 1;
        }
    }
    assert!(compared > 500, "only {compared} scores compared");
}
