//! Rendering of command results in the three output formats. Table output
//! is for humans; CSV and JSON carry the raw full-precision values so they
//! parse back to the same data.

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Value};

use planepart::asymptotics::EstimateReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Round half away from zero, the convention for every displayed count.
pub fn round_count(x: f64) -> f64 {
    x.round()
}

fn rounded_json(x: f64) -> Value {
    let r = x.round();
    if r.abs() < 9.0e15 {
        json!(r as i64)
    } else {
        json!(r)
    }
}

fn percent(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

pub fn emit_count(format: Format, kind: &str, n: u64, max_parts: Option<u64>, count: &BigUint) {
    match format {
        Format::Table => println!("{count}"),
        Format::Csv => {
            println!("kind,n,max_parts,count");
            let cap = max_parts.map(|c| c.to_string()).unwrap_or_default();
            println!("{kind},{n},{cap},{count}");
        }
        Format::Json => println!(
            "{}",
            json!({
                "kind": kind,
                "n": n,
                "max_parts": max_parts,
                "count": count.to_string(),
            })
        ),
    }
}

pub fn emit_gen_count(format: Format, n: u64, count: &BigUint) {
    match format {
        Format::Table => println!("{count}"),
        Format::Csv => {
            println!("n,count");
            println!("{n},{count}");
        }
        Format::Json => println!("{}", json!({ "n": n, "count": count.to_string() })),
    }
}

pub fn emit_estimate(
    format: Format,
    n: u64,
    max_parts: Option<u64>,
    base: &str,
    value: f64,
    in_window: Option<bool>,
) {
    match format {
        Format::Table => {
            println!("n          {n}");
            match max_parts {
                Some(cap) => println!("max_parts  {cap}"),
                None => println!("max_parts  -"),
            }
            println!("base       {base}");
            println!("estimate   {value:.6}");
            println!("rounded    {}", round_count(value));
            match in_window {
                Some(true) => println!("window     inside"),
                Some(false) => println!("window     outside"),
                None => println!("window     n/a"),
            }
        }
        Format::Csv => {
            println!("n,max_parts,base,estimate,rounded,in_window");
            let cap = max_parts.map(|c| c.to_string()).unwrap_or_default();
            let window = in_window.map(|w| w.to_string()).unwrap_or_default();
            println!("{n},{cap},{base},{value},{},{window}", round_count(value));
        }
        Format::Json => println!(
            "{}",
            json!({
                "n": n,
                "max_parts": max_parts,
                "base": base,
                "estimate": value,
                "rounded": rounded_json(value),
                "in_window": in_window,
            })
        ),
    }
}

pub struct ZnRow {
    pub n: usize,
    pub z: f64,
    pub y: f64,
    pub z_closed: Option<f64>,
}

pub fn emit_zn(format: Format, dim: u8, x: f64, rows: &[ZnRow], max_rel_dev: Option<f64>) {
    match format {
        Format::Table => {
            if rows.iter().any(|r| r.z_closed.is_some()) {
                println!("{:>6} {:>18} {:>12} {:>18}", "N", "Z_N", "y_N", "Z_closed");
                for r in rows {
                    println!(
                        "{:>6} {:>18.6} {:>12.6} {:>18.6}",
                        r.n,
                        r.z,
                        r.y,
                        r.z_closed.unwrap()
                    );
                }
            } else {
                println!("{:>6} {:>18} {:>12}", "N", "Z_N", "y_N");
                for r in rows {
                    println!("{:>6} {:>18.6} {:>12.6}", r.n, r.z, r.y);
                }
            }
            if let Some(dev) = max_rel_dev {
                println!("max relative deviation vs closed form: {dev:.3e}");
            }
        }
        Format::Csv => {
            if rows.iter().any(|r| r.z_closed.is_some()) {
                println!("n,z,y,z_closed");
                for r in rows {
                    println!("{},{},{},{}", r.n, r.z, r.y, r.z_closed.unwrap());
                }
            } else {
                println!("n,z,y");
                for r in rows {
                    println!("{},{},{}", r.n, r.z, r.y);
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "z": r.z,
                        "y": r.y,
                        "z_closed": r.z_closed,
                    })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "dim": dim,
                    "x": x,
                    "rows": rows,
                    "max_rel_dev_closed": max_rel_dev,
                })
            );
        }
    }
}

pub fn emit_table1(format: Format, rows: &[EstimateReport]) {
    let count = |c: &Option<BigUint>| c.as_ref().map(|v| v.to_string()).unwrap_or_default();
    match format {
        Format::Table => {
            println!(
                "{:>4} {:>4} {:>8} {:>8} {:>8} {:>8} {:>8} {:>7} {:>7} {:>7}",
                "n",
                "N",
                "p2d",
                "exact",
                "calc.1",
                "calc.2",
                "calc.3",
                "err.1%",
                "err.2%",
                "err.3%"
            );
            for r in rows {
                println!(
                    "{:>4} {:>4} {:>8} {:>8} {:>8} {:>8} {:>8} {:>7.1} {:>7.1} {:>7.1}",
                    r.n,
                    r.max_parts,
                    count(&r.p2d_exact),
                    count(&r.exact_restricted),
                    round_count(r.calc1),
                    round_count(r.calc2),
                    round_count(r.calc3),
                    percent(r.rel_err1.unwrap_or(f64::NAN)),
                    percent(r.rel_err2.unwrap_or(f64::NAN)),
                    percent(r.rel_err3.unwrap_or(f64::NAN)),
                );
            }
        }
        Format::Csv => {
            println!(
                "n,max_parts,p2d,exact,calc1,calc2,calc3,rel_err1_pct,rel_err2_pct,rel_err3_pct"
            );
            for r in rows {
                println!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.max_parts,
                    count(&r.p2d_exact),
                    count(&r.exact_restricted),
                    r.calc1,
                    r.calc2,
                    r.calc3,
                    r.rel_err1.unwrap_or(f64::NAN),
                    r.rel_err2.unwrap_or(f64::NAN),
                    r.rel_err3.unwrap_or(f64::NAN),
                );
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "max_parts": r.max_parts,
                        "p2d": r.p2d_exact.as_ref().map(|v| v.to_string()),
                        "exact": r.exact_restricted.as_ref().map(|v| v.to_string()),
                        "calc1": r.calc1,
                        "calc2": r.calc2,
                        "calc3": r.calc3,
                        "rel_err1_pct": r.rel_err1,
                        "rel_err2_pct": r.rel_err2,
                        "rel_err3_pct": r.rel_err3,
                    })
                })
                .collect();
            println!("{}", Value::Array(rows));
        }
    }
}
