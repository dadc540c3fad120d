//! One function per subcommand. Each reads its input, calls the library and
//! builds an [`Outcome`] carrying both the JSON payload and the human text.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use gkz::cayley::{essential_violation, Witness};
use gkz::circuits::is_balanced;
use gkz::exactalg::{parse, LaurentPolynomial};
use gkz::json::{configuration_from_str, configuration_to_string, parse_rational, residue_problem_from_str};
use gkz::polytope::{facial_subsets, is_spanning};
use gkz::residue::{
    declared_resultant, residue_witness, sylvester_resultant, symbolic_coefficients, toric_residue_with, MonomialOrder,
};
use gkz::weyl::{Counterexample, Status};
use gkz::{catalog, classify as run_classify, detect_cayley, enumerate_circuits, verify_hypergeometric};
use gkz::{Configuration, Error, SearchLimits};

use crate::report::{Failure, Input, Outcome, EXIT_INPUT, EXIT_REFUTED};
use crate::{ConfigSource, GlobalArgs};

type Outcomes = Result<Outcome, Failure>;

fn read_bytes(command: &'static str, path: &Path) -> Result<Vec<u8>, Failure> {
    let result = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map(|_| buf)
    } else {
        std::fs::read(path)
    };
    result.map_err(|e| Failure::new(command, format!("cannot read {}: {e}", path.display()), EXIT_INPUT))
}

fn utf8(command: &'static str, bytes: Vec<u8>) -> Result<String, Failure> {
    String::from_utf8(bytes).map_err(|_| Failure::new(command, "input is not UTF-8", EXIT_INPUT))
}

fn load(command: &'static str, source: &ConfigSource) -> Result<(Configuration, Input), Failure> {
    let fail = |e: Error| Failure::from_error(command, &e);
    if let Some(name) = &source.name {
        let a = catalog::by_name(name)
            .ok_or_else(|| Failure::new(command, format!("unknown configuration name {name:?}"), EXIT_INPUT))?;
        let canonical = configuration_to_string(&a).map_err(fail)?;
        return Ok((a, Input::new(format!("name:{name}"), canonical.as_bytes())));
    }
    let path = source.input.as_deref().expect("clap requires a source");
    let bytes = read_bytes(command, path)?;
    let input = Input::new(path.display().to_string(), &bytes);
    let a = configuration_from_str(&utf8(command, bytes)?).map_err(fail)?;
    Ok((a, input))
}

fn limits(g: &GlobalArgs) -> SearchLimits {
    SearchLimits { max_subsets: g.max_subsets }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

/// `{1,2,3}` from 0-based indices.
fn index_set(indices: &[usize]) -> String {
    let items: Vec<String> = indices.iter().map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", items.join(", "))
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Apex { column } => format!("apex a{}", column + 1),
        Witness::Cayley(cs) => {
            let groups: Vec<String> = cs.groups.iter().map(|g| index_set(g)).collect();
            format!("Cayley partition {} (r = {}, factors in Z^{})", groups.join("/"), cs.r, cs.dim)
        }
        Witness::Circuit(c) => {
            format!("circuit b = {} on columns {}, ρ = {}", tuple(&c.b), index_set(&c.support), c.rho)
        }
        Witness::Dimension { d } => format!("d = {d}"),
        Witness::None => "none".into(),
    }
}

pub fn classify(g: &GlobalArgs, source: &ConfigSource) -> Outcomes {
    const CMD: &str = "classify";
    let (a, input) = load(CMD, source)?;
    let c = run_classify(&a, limits(g)).map_err(|e| Failure::from_error(CMD, &e))?;
    let mut human = format!("verdict: {}\nwitness: {}\n", c.verdict, describe_witness(&c.witness));
    for n in &c.notes {
        let _ = writeln!(human, "note: {n}");
    }
    Ok(Outcome {
        command: CMD,
        input,
        result: to_value(&c),
        citations: vec![c.rule.description().to_string()],
        human,
        exit: 0,
    })
}

pub fn circuits(g: &GlobalArgs, source: &ConfigSource) -> Outcomes {
    const CMD: &str = "circuits";
    let (a, input) = load(CMD, source)?;
    let fail = |e: Error| Failure::from_error(CMD, &e);
    let list = enumerate_circuits(&a, limits(g)).map_err(fail)?;
    let mut rows = Vec::with_capacity(list.len());
    let mut human = format!("{} circuits\n", list.len());
    for c in &list {
        let balanced = is_balanced(c).is_balanced();
        let spanning = is_spanning(&a, &c.support).map_err(fail)?;
        let _ = writeln!(
            human,
            "{} b = {} ρ = {} {}{}",
            index_set(&c.support),
            tuple(&c.b),
            c.rho,
            if balanced { "balanced" } else { "unbalanced" },
            if spanning { " spanning" } else { "" },
        );
        let mut v = to_value(c);
        v["balanced"] = json!(balanced);
        v["spanning"] = json!(spanning);
        rows.push(v);
    }
    Ok(Outcome { command: CMD, input, result: Value::Array(rows), citations: Vec::new(), human, exit: 0 })
}

pub fn faces(_g: &GlobalArgs, source: &ConfigSource) -> Outcomes {
    const CMD: &str = "faces";
    let (a, input) = load(CMD, source)?;
    let faces = facial_subsets(&a);
    let mut human = format!("{} nonempty faces\n", faces.len());
    for f in &faces {
        let _ = writeln!(human, "{} normal {} value {}", index_set(&f.indices), tuple(&f.normal), f.value);
    }
    Ok(Outcome { command: CMD, input, result: to_value(&faces), citations: Vec::new(), human, exit: 0 })
}

pub fn cayley(g: &GlobalArgs, source: &ConfigSource) -> Outcomes {
    const CMD: &str = "cayley";
    let (a, input) = load(CMD, source)?;
    let found = detect_cayley(&a, limits(g)).map_err(|e| Failure::from_error(CMD, &e))?;
    let mut rows = Vec::with_capacity(found.len());
    let mut human = format!("{} Cayley structures\n", found.len());
    for cs in &found {
        let violation = essential_violation(cs);
        let groups: Vec<String> = cs.groups.iter().map(|g| index_set(g)).collect();
        let _ = write!(human, "{} r = {} n = {} essential = {}", groups.join("/"), cs.r, cs.dim, violation.is_none());
        if let Some(v) = &violation {
            let _ = write!(human, " (factors {} fall short)", index_set(v));
        }
        human.push('\n');
        let mut v = to_value(cs);
        v["essential"] = json!(violation.is_none());
        v["violation"] = to_value(&violation);
        rows.push(v);
    }
    Ok(Outcome { command: CMD, input, result: Value::Array(rows), citations: Vec::new(), human, exit: 0 })
}

pub fn verify(g: &GlobalArgs, source: &ConfigSource, function: Option<&str>, file: Option<&Path>) -> Outcomes {
    const CMD: &str = "verify";
    let (a, mut input) = load(CMD, source)?;
    let text = match (function, file) {
        (Some(t), _) => t.to_string(),
        (None, Some(path)) => utf8(CMD, read_bytes(CMD, path)?)?,
        (None, None) => return Err(Failure::new(CMD, "no function given", EXIT_INPUT)),
    };
    let combined = format!("{}\n{}", input.sha256, text.trim());
    input = Input::new(input.source, combined.as_bytes());
    let f = parse(&text, a.s()).map_err(|e| Failure::from_error(CMD, &e))?;
    let v = verify_hypergeometric(&a, &f, g.budget).map_err(|e| Failure::from_error(CMD, &e))?;
    let mut human = match v.status {
        Status::Certified => "certified\n".to_string(),
        Status::Refuted => "refuted\n".to_string(),
    };
    if let Some(beta) = &v.beta {
        let _ = writeln!(human, "β = {}", tuple(beta));
    }
    let _ = writeln!(human, "toric generators checked: {}", v.generators);
    match &v.counterexample {
        Some(Counterexample::Euler { row }) => {
            let _ = writeln!(human, "counterexample: not homogeneous for row {} of A", row + 1);
        }
        Some(Counterexample::Toric { operator }) => {
            let _ = writeln!(human, "counterexample: {operator} does not annihilate f");
        }
        None => {}
    }
    let mut result = to_value(&v);
    result["function"] = json!(f.to_string());
    Ok(Outcome {
        command: CMD,
        input,
        result,
        citations: Vec::new(),
        human,
        exit: if v.is_certified() { 0 } else { EXIT_REFUTED },
    })
}

pub fn residue(g: &GlobalArgs, path: &Path) -> Outcomes {
    const CMD: &str = "residue";
    let bytes = read_bytes(CMD, path)?;
    let input = Input::new(path.display().to_string(), &bytes);
    let prob = residue_problem_from_str(&utf8(CMD, bytes)?).map_err(|e| Failure::from_error(CMD, &e))?;
    let value =
        toric_residue_with(&prob, MonomialOrder::GRevLex, g.budget).map_err(|e| Failure::from_error(CMD, &e))?;
    let human = format!("Res(t^{}) = {value}\n", tuple(&prob.a));
    Ok(Outcome {
        command: CMD,
        input,
        result: json!({ "r": prob.r, "m": prob.m, "a": prob.a, "value": value.to_string() }),
        citations: Vec::new(),
        human,
        exit: 0,
    })
}

pub fn witness(g: &GlobalArgs, source: &ConfigSource) -> Outcomes {
    const CMD: &str = "witness";
    let (a, input) = load(CMD, source)?;
    let fail = |e: Error| Failure::from_error(CMD, &e);
    let found = detect_cayley(&a, limits(g)).map_err(fail)?;
    let cs = found
        .iter()
        .find(|cs| cs.r == 1 && cs.dim == 1)
        .ok_or_else(|| Failure::new(CMD, "A is not a Cayley configuration of two segments", EXIT_INPUT))?;
    let ws = residue_witness(&a, cs, g.seed).map_err(fail)?;
    let mut human = String::new();
    for w in &ws {
        let _ = writeln!(human, "a = {}: {}  (certified, β = {})", w.exponent, w.function, tuple(&w.beta));
    }
    Ok(Outcome { command: CMD, input, result: to_value(&ws), citations: Vec::new(), human, exit: 0 })
}

pub fn resultant(_g: &GlobalArgs, degrees: &[usize], coeffs: Option<&str>) -> Outcomes {
    const CMD: &str = "resultant";
    let &[d0, d1] = degrees else {
        return Err(Failure::new(CMD, "expected two degrees, e.g. --degrees 2,2", EXIT_INPUT));
    };
    if d0 == 0 || d1 == 0 {
        return Err(Failure::new(CMD, "degrees must be at least 1", EXIT_INPUT));
    }
    let fail = |e: Error| Failure::from_error(CMD, &e);
    match coeffs {
        None => {
            let n = d0 + d1 + 2;
            let f = symbolic_coefficients(0, d0 + 1, n);
            let h = symbolic_coefficients(d0 + 1, d1 + 1, n);
            let r: LaurentPolynomial = sylvester_resultant(&f, &h, n).map_err(fail)?;
            let text = r.to_string();
            let input = Input::new(format!("degrees {d0},{d1}"), format!("{d0},{d1}").as_bytes());
            Ok(Outcome {
                command: CMD,
                input,
                result: json!({ "degrees": [d0, d1], "resultant": text }),
                citations: Vec::new(),
                human: format!("R = {text}\n"),
                exit: 0,
            })
        }
        Some(text) => {
            let lists: Vec<&str> = text.split(';').collect();
            if lists.len() != 2 {
                return Err(Failure::new(CMD, "expected two coefficient lists separated by ';'", EXIT_INPUT));
            }
            let parsed = lists
                .iter()
                .map(|l| l.split(',').map(parse_rational).collect::<gkz::Result<Vec<_>>>())
                .collect::<gkz::Result<Vec<_>>>()
                .map_err(fail)?;
            for (list, d) in parsed.iter().zip([d0, d1]) {
                if list.len() != d + 1 {
                    return Err(Failure::new(
                        CMD,
                        format!("a polynomial of degree {d} needs {} coefficients, got {}", d + 1, list.len()),
                        EXIT_INPUT,
                    ));
                }
            }
            let value = declared_resultant(&parsed[0], &parsed[1]).map_err(fail)?;
            let input = Input::new(format!("degrees {d0},{d1}"), format!("{d0},{d1};{text}").as_bytes());
            Ok(Outcome {
                command: CMD,
                input,
                result: json!({ "degrees": [d0, d1], "resultant": value.to_string() }),
                citations: Vec::new(),
                human: format!("R = {value}\n"),
                exit: 0,
            })
        }
    }
}
