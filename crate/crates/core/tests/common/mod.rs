#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use dqfi::{ModelParams, ProbeState, C64};
use proptest::prelude::*;

pub fn params() -> impl Strategy<Value = ModelParams> {
    (0.01f64..20.0, 0.0f64..10.0, 0.0f64..5.0, -5.0f64..5.0)
        .prop_map(|(l, o, d, c)| ModelParams::new(l, o, d, c).unwrap())
}

pub fn probe() -> impl Strategy<Value = ProbeState> {
    (0.0f64..=PI, 0.0f64..TAU).prop_map(|(t, p)| ProbeState::new(t, p).unwrap())
}

/// Amplitudes inside the closed unit disk.
pub fn xi() -> impl Strategy<Value = C64> {
    (0.0f64..=1.0, -PI..PI).prop_map(|(r, a)| C64::from_polar(r, a))
}

/// Blocks of a CSV document: `(metadata, header, rows)`.
pub type Block = (Vec<(String, String)>, Vec<String>, Vec<Vec<String>>);

pub fn parse_csv(text: &str) -> Vec<Block> {
    text.split("\n\n")
        .filter(|b| !b.trim().is_empty())
        .map(|block| {
            let mut meta = Vec::new();
            let mut header = Vec::new();
            let mut rows = Vec::new();
            for line in block.lines() {
                if let Some(kv) = line.strip_prefix("# ") {
                    let (k, v) = kv.split_once('=').unwrap();
                    meta.push((k.to_string(), v.to_string()));
                } else if header.is_empty() {
                    header = line.split(',').map(String::from).collect();
                } else {
                    rows.push(line.split(',').map(String::from).collect());
                }
            }
            (meta, header, rows)
        })
        .collect()
}

pub fn column(block: &Block, name: &str) -> Vec<f64> {
    let i = block.1.iter().position(|h| h == name).unwrap();
    block.2.iter().map(|r| r[i].parse().unwrap()).collect()
}

pub fn meta<'a>(block: &'a Block, key: &str) -> Option<&'a str> {
    block.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}
