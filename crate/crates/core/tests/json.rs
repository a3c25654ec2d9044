use quadorth::cases::{verify_case, CaseId, CaseVerdict};
use quadorth::mps::{MpsSpec, StructureCoefficients};
use quadorth::ortho::{check_hahn_classical, HahnReport};
use quadorth::quad::{decompose, QdComponents, QdMatrix};
use quadorth::sampling::{random_spec, rng_from_seed, sample_many};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(value: &T) {
    let text = serde_json::to_string(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

#[test]
fn specs_tables_and_matrices() {
    for seed in 0..12 {
        let spec = random_spec(&mut rng_from_seed(seed), 12);
        round_trip(&spec);
        let sc = spec.table(10).unwrap();
        round_trip(&sc);
        round_trip(&MpsSpec::Explicit(sc.clone()));
        let map = quadorth::quad::QuadMap::new(1.into(), (-2).into(), quadorth::rat(1, 3));
        let c = decompose(&sc, &map, 5).unwrap();
        round_trip(&c);
        round_trip(&QdMatrix::from(c));
    }
}

#[test]
fn ortho_reports() {
    let spec = random_spec(&mut rng_from_seed(3), 14);
    let report: HahnReport = check_hahn_classical(&spec, 6).unwrap();
    round_trip(&report);
}

#[test]
fn verdicts_for_every_case() {
    for case in CaseId::ALL {
        let params = &sample_many(case, 21, 1).unwrap()[0];
        round_trip(params);
        let verdict: CaseVerdict = verify_case(case, params, 4, 4).unwrap();
        round_trip(&verdict);
    }
}

#[test]
fn structure_table_json_shape() {
    let text = r#"{"nmax":2,"beta":["1","1/2","0"],"chi":[["3"],["0","-1/4"]]}"#;
    let sc: StructureCoefficients = serde_json::from_str(text).unwrap();
    assert_eq!(sc.chi(1, 1), &quadorth::rat(-1, 4));
    let bad = r#"{"nmax":2,"beta":["1","0"],"chi":[["3"],["0","1"]]}"#;
    assert!(serde_json::from_str::<StructureCoefficients>(bad).is_err());
    let matrix: QdMatrix = serde_json::from_str(
        &serde_json::to_string(&QdMatrix::from(
            decompose(&sc, &quadorth::quad::QuadMap::new(0.into(), 0.into(), 0.into()), 1).unwrap(),
        ))
        .unwrap(),
    )
    .unwrap();
    assert!(QdComponents::try_from(matrix).is_ok());
}
