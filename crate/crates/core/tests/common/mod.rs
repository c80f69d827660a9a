#![allow(dead_code)]

use nquiver::{dsl, BoundQuiver, Field};

pub fn load(name: &str) -> BoundQuiver {
    let path = format!("{}/data/{name}.qv", env!("CARGO_MANIFEST_DIR"));
    let src = std::fs::read_to_string(&path).unwrap();
    dsl::parse(&src, Field::Rational).unwrap()
}

pub fn load_in(name: &str, field: Field) -> BoundQuiver {
    let path = format!("{}/data/{name}.qv", env!("CARGO_MANIFEST_DIR"));
    dsl::parse(&std::fs::read_to_string(&path).unwrap(), field).unwrap()
}
