use hullwalk::montecarlo::RunConfig;
use hullwalk::tables::{ratio_table, RatioTable, JSON_SCHEMA};
use hullwalk::{QuadratureSpec, StepLaw};
use serde_json::Value;

fn table() -> RatioTable {
    let laws = [StepLaw::new(1, 1).unwrap(), StepLaw::new(5, 7).unwrap(), StepLaw::new(3, 0).unwrap()];
    ratio_table(&laws, &[1, 20, 200], &RunConfig::new(4096, 99).with_workers(2), &QuadratureSpec::default())
        .unwrap()
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(JSON_SCHEMA).unwrap();
    jsonschema::draft202012::new(&schema).unwrap()
}

#[test]
fn json_output_validates() {
    let doc: Value = serde_json::from_str(&table().to_json()).unwrap();
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn schema_rejects_tampered_documents() {
    let v = validator();
    let good: Value = serde_json::from_str(&table().to_json()).unwrap();

    let mut extra = good.clone();
    extra["rows"][0]["note"] = Value::from("x");
    assert!(!v.is_valid(&extra));

    let mut version = good.clone();
    version["schema_version"] = Value::from(2);
    assert!(!v.is_valid(&version));

    let mut missing = good;
    missing["rows"][1].as_object_mut().unwrap().remove("stderr");
    assert!(!v.is_valid(&missing));
}

#[test]
fn csv_and_json_carry_the_same_rows() {
    let t = table();
    let text = t.to_csv();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<hullwalk::tables::RatioRow> = rdr.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows, RatioTable::from_json(&t.to_json()).unwrap().rows);
    assert_eq!(rows.len(), 9);
}

#[test]
fn one_step_rows_are_exact() {
    // p_1 = 1/2 for any law, so every run is a clean coin flip
    for r in table().rows.iter().filter(|r| r.n == 1) {
        assert!(r.c_sim > 0.0 && r.stderr > 0.0 && r.stderr <= 0.5 / (r.runs as f64).sqrt());
    }
}
