use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::algebra::{Rational, RationalFunction};
use crate::dulac::SystemDef;
use crate::error::{Error, Result};
use crate::roots::{Bound, IntervalQ};
use crate::topology::Region;

use super::parse::{parse_constant, parse_expression};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Direct,
    Polar,
    Lienard,
    Kolmogorov,
    Massera,
    LotkaVolterra,
    MtRecurrence,
    SecondMethod,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Direct,
        Method::Polar,
        Method::Lienard,
        Method::Kolmogorov,
        Method::Massera,
        Method::LotkaVolterra,
        Method::MtRecurrence,
        Method::SecondMethod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Polar => "polar",
            Method::Lienard => "lienard",
            Method::Kolmogorov => "kolmogorov",
            Method::Massera => "massera",
            Method::LotkaVolterra => "lotka-volterra",
            Method::MtRecurrence => "mt-recurrence",
            Method::SecondMethod => "second-method",
        }
    }

    /// Whether the problem file carries a `[system]` section.
    pub fn needs_system(self) -> bool {
        matches!(self, Method::Direct | Method::Polar | Method::MtRecurrence)
    }

    /// `(required, optional)` keys of `[certificate]` besides `method`.
    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Method::Direct => (&["V", "s"], &["region"]),
            Method::Polar => (&["s"], &["origin_only"]),
            Method::Lienard => (&["F", "g", "s"], &["c0", "c1", "region"]),
            Method::Kolmogorov => (&["g0", "g1", "h0", "h1", "h2", "lambda", "interval"], &[]),
            Method::Massera => (&["f", "g"], &["interval"]),
            Method::LotkaVolterra => (&["a", "b", "c", "d", "e", "f"], &[]),
            Method::MtRecurrence => (&["s", "n", "degree_cap"], &["region"]),
            Method::SecondMethod => (&["h0", "h1", "h2", "v2"], &["region"]),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Schema(format!("unknown method `{s}`")))
    }
}

/// Arguments of each method. Expressions keep parameters symbolic until
/// the problem is run, so a sweep only rebinds values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MethodArgs {
    Direct { v: RationalFunction, s: RationalFunction, region: Region },
    Polar { s: RationalFunction, origin_only: bool },
    Lienard { f: RationalFunction, g: RationalFunction, s: RationalFunction, c0: RationalFunction, c1: RationalFunction, region: Region },
    Kolmogorov { g: [RationalFunction; 2], h: [RationalFunction; 3], lambda: RationalFunction, interval: IntervalQ },
    Massera { f: RationalFunction, g: RationalFunction, interval: IntervalQ },
    LotkaVolterra { coeffs: [RationalFunction; 6] },
    MtRecurrence { s: RationalFunction, n: u32, degree_cap: u32, region: Region },
    SecondMethod { h: [RationalFunction; 3], v2: RationalFunction, region: Region },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub method: Method,
    /// Present exactly for the methods that take a field as input; the
    /// family methods build their own.
    pub system: Option<SystemDef>,
    pub params: BTreeMap<String, Rational>,
    pub args: MethodArgs,
}

impl ProblemSpec {
    /// Same problem with one parameter rebound.
    pub fn with_param(&self, name: &str, value: Rational) -> ProblemSpec {
        let mut out = self.clone();
        out.params.insert(name.to_string(), value.clone());
        if let Some(sys) = &mut out.system {
            sys.params.insert(name.to_string(), value);
        }
        out
    }
}

fn string_table(doc: &toml::Table, section: &str) -> Result<Option<BTreeMap<String, String>>> {
    let Some(value) = doc.get(section) else {
        return Ok(None);
    };
    let table = value
        .as_table()
        .ok_or_else(|| Error::Schema(format!("`{section}` must be a section")))?;
    table
        .iter()
        .map(|(k, v)| match v.as_str() {
            Some(s) => Ok((k.clone(), s.to_string())),
            None => Err(Error::Schema(format!("`{section}.{k}` must be a quoted string"))),
        })
        .collect::<Result<_>>()
        .map(Some)
}

fn check_keys(section: &str, got: &BTreeMap<String, String>, required: &[&str], optional: &[&str]) -> Result<()> {
    let missing: Vec<&str> = required.iter().copied().filter(|k| !got.contains_key(*k)).collect();
    let extra: Vec<&str> = got
        .keys()
        .map(String::as_str)
        .filter(|k| !required.contains(k) && !optional.contains(k))
        .collect();
    if missing.is_empty() && extra.is_empty() {
        return Ok(());
    }
    let mut parts = Vec::new();
    if !missing.is_empty() {
        parts.push(format!("missing keys {missing:?}"));
    }
    if !extra.is_empty() {
        parts.push(format!("unexpected keys {extra:?}"));
    }
    Err(Error::Schema(format!("[{section}]: {}", parts.join(", "))))
}

/// `plane`, `quadrant(+,-)` or `strip(a, b)` with the interval syntax of
/// [`parse_interval`].
pub fn parse_region(text: &str) -> Result<Region> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "plane" {
        return Ok(Region::Plane);
    }
    if let Some(rest) = t.strip_prefix("strip") {
        return Ok(Region::Strip(parse_interval(rest)?));
    }
    if let Some(signs) = t.strip_prefix("quadrant(").and_then(|r| r.strip_suffix(')')) {
        let sign = |s: &str| match s {
            "+" => Ok(true),
            "-" => Ok(false),
            _ => Err(Error::Schema(format!("quadrant sign `{s}` is not + or -"))),
        };
        if let Some((a, b)) = signs.split_once(',') {
            return Ok(Region::OpenQuadrant { x_positive: sign(a)?, y_positive: sign(b)? });
        }
    }
    Err(Error::Schema(format!("unknown region `{text}`; use plane, quadrant(+,+) or strip(a, b)")))
}

/// `(a, b)`, `[a, b]`, `[a, b)`, `(a, b]` with exact endpoints or
/// `-inf` / `+inf`.
pub fn parse_interval(text: &str) -> Result<IntervalQ> {
    let t = text.trim();
    let bad = || Error::Schema(format!("`{text}` is not an interval like (a, b) or [a, +inf)"));
    let mut chars = t.chars();
    let (open, close) = (chars.next().ok_or_else(bad)?, chars.next_back().ok_or_else(bad)?);
    let inner = &t[1..t.len() - 1];
    let (a, b) = inner.split_once(',').ok_or_else(bad)?;
    let end = |s: &str, closed: bool, infinite: &str| -> Result<Bound> {
        let s = s.trim();
        if s == infinite || (infinite == "+inf" && s == "inf") {
            if closed {
                return Err(bad());
            }
            return Ok(Bound::Unbounded);
        }
        let v = parse_constant(s)?;
        Ok(if closed { Bound::Closed(v) } else { Bound::Open(v) })
    };
    let lo = match open {
        '(' => end(a, false, "-inf")?,
        '[' => end(a, true, "-inf")?,
        _ => return Err(bad()),
    };
    let hi = match close {
        ')' => end(b, false, "+inf")?,
        ']' => end(b, true, "+inf")?,
        _ => return Err(bad()),
    };
    let iv = IntervalQ::new(lo, hi);
    if iv.is_empty() {
        return Err(Error::Schema(format!("interval `{text}` is empty")));
    }
    Ok(iv)
}

fn parse_count(key: &str, text: &str) -> Result<u32> {
    text.trim()
        .parse()
        .map_err(|_| Error::Schema(format!("`{key}` must be a nonnegative integer, got `{text}`")))
}

/// Parses the text of a problem file.
///
/// ```toml
/// [system]
/// P = "y"
/// Q = "-eps*(x^2 - 1)*y - x"
///
/// [params]
/// eps = "1"
///
/// [certificate]
/// method = "direct"
/// V = "x^2 + y^2 - 1"
/// s = "-2"
/// ```
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let doc: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e
            .span()
            .map(|sp| {
                let before = &text[..sp.start];
                let line = before.matches('\n').count() + 1;
                let column = sp.start - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                (line, column)
            })
            .unwrap_or((1, 1));
        Error::Parse { line, column, message: e.message().to_string() }
    })?;
    let unknown: Vec<&String> = doc
        .keys()
        .filter(|k| !["system", "params", "certificate"].contains(&k.as_str()))
        .collect();
    if !unknown.is_empty() {
        return Err(Error::Schema(format!("unexpected sections {unknown:?}")));
    }

    let raw_params = string_table(&doc, "params")?.unwrap_or_default();
    let params: BTreeMap<String, Rational> = raw_params
        .iter()
        .map(|(k, v)| {
            if k == "x" || k == "y" {
                return Err(Error::Schema(format!("parameter name `{k}` is reserved")));
            }
            parse_constant(v).map(|q| (k.clone(), q))
        })
        .collect::<Result<_>>()?;
    let names: Vec<&str> = params.keys().map(String::as_str).collect();

    let mut cert = string_table(&doc, "certificate")?
        .ok_or_else(|| Error::Schema("missing section [certificate]".into()))?;
    let method: Method = cert
        .remove("method")
        .ok_or_else(|| Error::Schema("[certificate]: missing keys [\"method\"]".into()))?
        .parse()?;
    let (required, optional) = method.keys();
    check_keys("certificate", &cert, required, optional)?;

    let system = match (method.needs_system(), string_table(&doc, "system")?) {
        (true, Some(sys)) => {
            check_keys("system", &sys, &["P", "Q"], &[])?;
            let p = parse_expression(&sys["P"], &["x", "y"], &names)?;
            let q = parse_expression(&sys["Q"], &["x", "y"], &names)?;
            Some(SystemDef::new(p, q).with_params(params.clone()))
        }
        (true, None) => return Err(Error::Schema(format!("method {method} needs a [system] section"))),
        (false, Some(_)) => {
            return Err(Error::Schema(format!("method {method} builds its own field; drop the [system] section")))
        }
        (false, None) => None,
    };

    let xy = |key: &str| parse_expression(&cert[key], &["x", "y"], &names);
    let x_only = |key: &str| parse_expression(&cert[key], &["x"], &names);
    let scalar = |key: &str| parse_expression(&cert[key], &[], &names);
    let scalar_or_zero = |key: &str| match cert.get(key) {
        Some(t) => parse_expression(t, &[], &names),
        None => Ok(RationalFunction::zero()),
    };
    let region = || cert.get("region").map_or(Ok(Region::Plane), |t| parse_region(t));

    let args = match method {
        Method::Direct => MethodArgs::Direct { v: xy("V")?, s: scalar("s")?, region: region()? },
        Method::Polar => MethodArgs::Polar {
            s: scalar("s")?,
            origin_only: match cert.get("origin_only").map(String::as_str) {
                None | Some("false") => false,
                Some("true") => true,
                Some(other) => return Err(Error::Schema(format!("`origin_only` must be true or false, got `{other}`"))),
            },
        },
        Method::Lienard => MethodArgs::Lienard {
            f: x_only("F")?,
            g: x_only("g")?,
            s: scalar("s")?,
            c0: scalar_or_zero("c0")?,
            c1: scalar_or_zero("c1")?,
            region: region()?,
        },
        Method::Kolmogorov => MethodArgs::Kolmogorov {
            g: [x_only("g0")?, x_only("g1")?],
            h: [x_only("h0")?, x_only("h1")?, x_only("h2")?],
            lambda: scalar("lambda")?,
            interval: parse_interval(&cert["interval"])?,
        },
        Method::Massera => MethodArgs::Massera {
            f: x_only("f")?,
            g: x_only("g")?,
            interval: cert.get("interval").map_or(Ok(IntervalQ::real_line()), |t| parse_interval(t))?,
        },
        Method::LotkaVolterra => MethodArgs::LotkaVolterra {
            coeffs: [scalar("a")?, scalar("b")?, scalar("c")?, scalar("d")?, scalar("e")?, scalar("f")?],
        },
        Method::MtRecurrence => MethodArgs::MtRecurrence {
            s: scalar("s")?,
            n: parse_count("n", &cert["n"])?,
            degree_cap: parse_count("degree_cap", &cert["degree_cap"])?,
            region: region()?,
        },
        Method::SecondMethod => MethodArgs::SecondMethod {
            h: [x_only("h0")?, x_only("h1")?, x_only("h2")?],
            v2: x_only("v2")?,
            region: region()?,
        },
    };
    Ok(ProblemSpec { method, system, params, args })
}

/// Reads and validates a problem file.
pub fn load_problem(path: &Path) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_problem(&text)
}
