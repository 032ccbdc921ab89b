//! Minimal flag parser for the fixed subcommand grammar.

use std::collections::{HashMap, HashSet};

/// Flags that take no value.
const BOOL_FLAGS: &[&str] = &["--json", "--quiet", "--minimize"];

/// Flags that take a value; single-dash `-p`/`-m` are accepted as aliases.
const VALUE_FLAGS: &[&str] = &[
    "--config",
    "--u",
    "--up",
    "--seed",
    "--restarts",
    "--iters",
    "--min-sep",
    "--max-diam",
    "--step",
    "--t0",
    "--decay",
    "--tol",
    "--threads",
    "--soft-sup",
    "--out",
    "--center",
    "--angles",
    "--separations",
    "--samples",
    "-p",
    "--p",
    "-m",
    "--m",
];

#[derive(Debug, Default)]
pub struct Args {
    values: HashMap<String, String>,
    switches: HashSet<String>,
    seen: HashSet<String>,
}

impl Args {
    pub fn parse(tokens: &[String]) -> Result<Args, String> {
        let mut args = Args::default();
        let mut it = tokens.iter();
        while let Some(tok) = it.next() {
            if BOOL_FLAGS.contains(&tok.as_str()) {
                args.switches.insert(tok.clone());
                continue;
            }
            if VALUE_FLAGS.contains(&tok.as_str()) {
                let key = canonical(tok);
                let value = it
                    .next()
                    .ok_or_else(|| format!("flag {tok} expects a value"))?;
                if args.values.insert(key.to_string(), value.clone()).is_some() {
                    return Err(format!("flag {tok} given twice"));
                }
                continue;
            }
            return Err(format!("unknown argument '{tok}'"));
        }
        Ok(args)
    }

    pub fn switch(&self, name: &str) -> bool {
        self.switches.contains(name)
    }

    pub fn get(&mut self, name: &str) -> Option<&str> {
        self.seen.insert(name.to_string());
        self.values.get(name).map(|s| s.as_str())
    }

    pub fn require(&mut self, name: &str) -> Result<&str, String> {
        self.seen.insert(name.to_string());
        self.values
            .get(name)
            .map(|s| s.as_str())
            .ok_or_else(|| format!("missing required flag {name}"))
    }

    /// Reject flags that the dispatched subcommand never consumed.
    pub fn reject_unused(&self) -> Result<(), String> {
        for key in self.values.keys() {
            if !self.seen.contains(key) {
                return Err(format!("flag {key} is not accepted by this subcommand"));
            }
        }
        Ok(())
    }
}

fn canonical(flag: &str) -> &str {
    match flag {
        "-p" => "--p",
        "-m" => "--m",
        other => other,
    }
}

pub fn parse_u64(name: &str, value: &str) -> Result<u64, String> {
    value
        .parse()
        .map_err(|_| format!("{name} expects an unsigned integer, got '{value}'"))
}

pub fn parse_usize(name: &str, value: &str) -> Result<usize, String> {
    value
        .parse()
        .map_err(|_| format!("{name} expects an unsigned integer, got '{value}'"))
}

pub fn parse_f64(name: &str, value: &str) -> Result<f64, String> {
    value
        .parse()
        .map_err(|_| format!("{name} expects a number, got '{value}'"))
}

pub fn parse_f64_list(name: &str, value: &str) -> Result<Vec<f64>, String> {
    value
        .split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("{name} expects comma-separated numbers, got '{piece}'"))
        })
        .collect()
}
