//! Dispatch a parsed job to the library and shape the JSON result.
//!
//! Every ideal-valued field is printed as the canonical reduced basis,
//! descending by leading term, so identical inputs always serialize to
//! identical bytes. serde_json's map keeps keys sorted, which fixes the field
//! order.

use serde_json::{json, Value};

use flatlimit::chains::{
    apply_group_element, build_chain, is_stable, semistable_reduce, ChainIdeal,
};
use flatlimit::degeneration::{initial_ideal_t, is_relative};
use flatlimit::parse::{parse_polynomial, parse_rational};
use flatlimit::{
    Colength, Error, FamilyIdeal, FlatCertificate, GroupElement, Ideal, LimitRecord, NodeIdeal,
    Polynomial, Ring, WeightExponent,
};

use crate::job::Job;

fn gens(ideal: &Ideal) -> Result<Value, Error> {
    Ok(Value::from(ideal.canonical_generators()?))
}

fn family(job: &Job, ideal: &Ideal) -> Result<FamilyIdeal, Error> {
    let t = job.ring.var_name(job.role("param")?);
    let y = job.ring.var_name(job.role("divisor")?);
    FamilyIdeal::new(ideal, t, y)
}

fn node(job: &Job, ideal: &Ideal) -> Result<NodeIdeal, Error> {
    let y1 = job.ring.var_name(job.role("y1")?);
    let y2 = job.ring.var_name(job.role("y2")?);
    NodeIdeal::new(ideal, y1, y2)
}

fn polynomial_arg(job: &Job, from: usize) -> Result<Polynomial, Error> {
    job.arg(from)?;
    parse_polynomial(&job.args[from..].join(" "), &job.ring)
}

fn exponent_arg(job: &Job, index: usize) -> Result<WeightExponent, Error> {
    WeightExponent::from_rational(&parse_rational(job.arg(index)?)?)
}

fn component_arg(job: &Job, index: usize) -> Result<u8, Error> {
    match job.arg(index)? {
        "1" => Ok(1),
        "2" => Ok(2),
        other => Err(Error::SyntaxError {
            position: 0,
            message: format!("component must be 1 or 2, got '{other}'"),
        }),
    }
}

fn certificate_json(cert: Option<FlatCertificate>) -> Value {
    match cert {
        None => Value::Null,
        Some(FlatCertificate::ZeroDim { colength }) => json!({ "colength": colength }),
        Some(FlatCertificate::PositiveDim) => Value::from("positive-dimensional"),
    }
}

fn record_json(record: &LimitRecord) -> Result<Value, Error> {
    Ok(json!({
        "certificate": certificate_json(record.certificate),
        "divisor_image_of_limit": gens(&record.divisor_image_of_limit)?,
        "exponent": record.exponent.to_string(),
        "limit": gens(&record.limit)?,
        "saturated": gens(&record.saturated)?,
        "substituted": gens(&record.substituted)?,
    }))
}

/// The ring chain components live in: the divisor variable first, then the
/// transverse directions in declaration order.
fn chain_rings(job: &Job) -> Result<(std::sync::Arc<Ring>, std::sync::Arc<Ring>), Error> {
    let divisor = job.role("divisor")?;
    let skip = [Some(divisor), job.roles.param, job.roles.y1, job.roles.y2];
    let mut names = vec![job.ring.var_name(divisor)];
    let mut xs = Vec::new();
    for (i, v) in job.ring.vars().iter().enumerate() {
        if !skip.contains(&Some(i)) {
            names.push(v);
            xs.push(v.as_str());
        }
    }
    Ok((Ring::new(names)?, Ring::new(xs)?))
}

struct ChainSpec {
    components: Vec<String>,
    end: Option<String>,
    sigma: Option<String>,
}

fn chain_args(job: &Job) -> Result<ChainSpec, Error> {
    let mut spec = ChainSpec { components: Vec::new(), end: None, sigma: None };
    for arg in &job.args {
        if let Some(name) = arg.strip_prefix("end:") {
            spec.end = Some(name.to_string());
        } else if let Some(list) = arg.strip_prefix("sigma:") {
            spec.sigma = Some(list.to_string());
        } else {
            spec.components.push(arg.clone());
        }
    }
    if spec.components.is_empty() {
        return Err(Error::SyntaxError {
            position: 0,
            message: format!("cmd '{}' names no chain components", job.command),
        });
    }
    Ok(spec)
}

fn assemble_chain(job: &Job, spec: &ChainSpec) -> Result<ChainIdeal, Error> {
    let (comp_ring, end_ring) = chain_rings(job)?;
    let mut components = Vec::new();
    for name in &spec.components {
        components.push(job.ideal(name)?.into_ring(&comp_ring)?);
    }
    let end = match &spec.end {
        None => Ideal::unit(&end_ring),
        Some(name) => job.ideal(name)?.into_ring(&end_ring)?,
    };
    build_chain(&components, &end)
}

fn sigma_arg(spec: &ChainSpec) -> Result<GroupElement, Error> {
    let Some(list) = &spec.sigma else {
        return Err(Error::SyntaxError {
            position: 0,
            message: "group-act needs a sigma:<q1>;<q2>;... argument".to_string(),
        });
    };
    let mut entries = Vec::new();
    for part in list.split(';') {
        entries.push(parse_rational(part)?);
    }
    GroupElement::new(entries)
}

fn chain_json(chain: &ChainIdeal) -> Result<Value, Error> {
    let mut components = Vec::new();
    for c in chain.components() {
        components.push(gens(c)?);
    }
    Ok(json!({
        "components": components,
        "end_divisor_data": gens(chain.end_divisor_data())?,
        "length": chain.length(),
    }))
}

/// Excess generators of (J : y_other) that fail membership in J + (y_c);
/// empty exactly when Tor¹ against branch c vanishes.
fn quotient_excess(node: &NodeIdeal, component: u8) -> Result<Vec<String>, Error> {
    let (quotient, sum) = node.tor1(component)?;
    let mut excess = Vec::new();
    for text in quotient.canonical_generators()? {
        let poly = parse_polynomial(&text, quotient.ring())?;
        if !sum.contains(&poly)? {
            excess.push(text);
        }
    }
    Ok(excess)
}

pub fn execute(job: &Job, verify: bool) -> Result<(Value, Option<Value>), Error> {
    let result = match job.command.as_str() {
        "gb" => json!({ "basis": gens(job.ideal(job.arg(0)?)?)? }),
        "nf" => {
            let ideal = job.ideal(job.arg(0)?)?;
            let p = polynomial_arg(job, 1)?;
            let nf = ideal.normal_form(&p, &flatlimit::MonomialOrder::grevlex())?;
            json!({ "normal_form": nf.format_canonical() })
        }
        "member" => {
            let ideal = job.ideal(job.arg(0)?)?;
            let p = polynomial_arg(job, 1)?;
            json!({ "member": ideal.contains(&p)? })
        }
        "quotient" => {
            let ideal = job.ideal(job.arg(0)?)?;
            let f = polynomial_arg(job, 1)?;
            json!({ "quotient": gens(&ideal.quotient(&f)?)? })
        }
        "saturate" => {
            let ideal = job.ideal(job.arg(0)?)?;
            let f = polynomial_arg(job, 1)?;
            json!({ "saturation": gens(&ideal.saturation(&f)?)? })
        }
        "eliminate" => {
            let ideal = job.ideal(job.arg(0)?)?;
            job.arg(1)?;
            let names: Vec<&str> = job.args[1..].iter().map(String::as_str).collect();
            let eliminated = ideal.eliminate(&names)?;
            json!({
                "eliminated": gens(&eliminated)?,
                "ring": eliminated.ring().vars(),
            })
        }
        "intersect" => {
            let a = job.ideal(job.arg(0)?)?;
            let b = job.ideal(job.arg(1)?)?;
            json!({ "intersection": gens(&a.intersect(b)?)? })
        }
        "colength" => {
            let value = match job.ideal(job.arg(0)?)?.colength()? {
                Colength::Finite(n) => Value::from(n),
                Colength::Infinite => Value::from("INFINITE"),
            };
            json!({ "colength": value })
        }
        "fiber" => {
            let f = family(job, job.ideal(job.arg(0)?)?)?;
            let at: i64 = job.arg(1)?.parse().map_err(|_| Error::SyntaxError {
                position: 0,
                message: format!("fiber value '{}' is not an integer", job.args[1]),
            })?;
            json!({ "fiber": gens(&f.fiber_at(at)?)? })
        }
        "divisor-image" => {
            let f = family(job, job.ideal(job.arg(0)?)?)?;
            json!({ "divisor_image": gens(&f.divisor_image()?)? })
        }
        "initial" => {
            let ideal = job.ideal(job.arg(0)?)?;
            let t = job.role("param")?;
            json!({ "initial": gens(&initial_ideal_t(ideal, t)?)? })
        }
        "relative-check" => {
            let ideal = job.ideal(job.arg(0)?)?;
            let relative = if job.roles.param.is_some() {
                let f = family(job, ideal)?;
                let by_family = f.is_relative_family()?;
                if verify {
                    let direct = is_relative(&f.fiber_at_zero()?, 0)?;
                    if direct != by_family {
                        return Err(Error::VerificationFailure {
                            detail: "relativeness routes disagree on this family".to_string(),
                        });
                    }
                }
                by_family
            } else {
                is_relative(ideal, job.role("divisor")?)?
            };
            json!({ "relative": relative })
        }
        "limit" => {
            let f = family(job, job.ideal(job.arg(0)?)?)?;
            let record = f.flat_limit(exponent_arg(job, 1)?)?;
            record_json(&record)?
        }
        "trivial-check" => {
            let f = family(job, job.ideal(job.arg(0)?)?)?;
            json!({ "trivial": f.is_trivial_limit(exponent_arg(job, 1)?)? })
        }
        "critical-exponent" => {
            let f = family(job, job.ideal(job.arg(0)?)?)?;
            let (a_star, record) = f.critical_exponent()?;
            let above = WeightExponent::new(a_star.p() + a_star.q(), a_star.q())?;
            json!({
                "a_star": a_star.to_string(),
                "limit": gens(&record.limit)?,
                "trivial_above": f.is_trivial_limit(above)?,
            })
        }
        "perfect-check" => {
            let n = node(job, job.ideal(job.arg(0)?)?)?;
            let mut witness = None;
            for component in [1u8, 2] {
                let excess = quotient_excess(&n, component)?;
                if !excess.is_empty() {
                    witness = Some(json!({
                        "component": component,
                        "quotient_excess": excess,
                    }));
                    break;
                }
            }
            if verify && n.is_perfect()? != witness.is_none() {
                return Err(Error::VerificationFailure {
                    detail: "perfectness routes disagree on this ideal".to_string(),
                });
            }
            match witness {
                None => json!({ "perfect": true }),
                Some(w) => json!({ "perfect": false, "witness": w }),
            }
        }
        "tor1" => {
            let n = node(job, job.ideal(job.arg(0)?)?)?;
            let (quotient, sum) = n.tor1(component_arg(job, 1)?)?;
            json!({
                "quotient": gens(&quotient)?,
                "sum": gens(&sum)?,
                "vanishes": quotient.is_subideal_of(&sum)?,
            })
        }
        "glue" => {
            let y1 = job.ring.var_name(job.role("y1")?);
            let y2 = job.ring.var_name(job.role("y2")?);
            let keep = |drop: usize| -> Result<std::sync::Arc<Ring>, Error> {
                let names: Vec<&str> = job
                    .ring
                    .vars()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, v)| v.as_str())
                    .collect();
                Ring::new(names)
            };
            let i1 = job.ideal(job.arg(0)?)?.into_ring(&keep(job.role("y2")?)?)?;
            let i2 = job.ideal(job.arg(1)?)?.into_ring(&keep(job.role("y1")?)?)?;
            let glued = flatlimit::degeneration::glue_node(&i1, y1, &i2, y2)?;
            json!({
                "glued": gens(glued.ideal())?,
                "ring": glued.ring().vars(),
            })
        }
        "restrict" => {
            let n = node(job, job.ideal(job.arg(0)?)?)?;
            json!({ "restriction": gens(&n.restrict(component_arg(job, 1)?)?)? })
        }
        "reduce" => {
            let f = family(job, job.ideal(job.arg(0)?)?)?;
            let (chain, trace) = semistable_reduce(&f)?;
            let mut steps = Vec::new();
            for step in &trace.steps {
                steps.push(json!({
                    "base_change": step.base_change,
                    "component": step.component,
                    "cumulative_exponent": step.cumulative_exponent.to_string(),
                    "exponent": step.exponent.to_string(),
                    "record": record_json(&step.record)?,
                }));
            }
            let mut result = chain_json(&chain)?;
            result["stable"] = Value::from(is_stable(&chain)?);
            let trace_json = json!({
                "steps": steps,
                "total_base_change": trace.total_base_change,
            });
            return Ok((result, Some(trace_json)));
        }
        "chain-check" => {
            let chain = assemble_chain(job, &chain_args(job)?)?;
            let mut value = chain_json(&chain)?;
            value["valid"] = Value::from(true);
            value
        }
        "stability-check" => {
            let chain = assemble_chain(job, &chain_args(job)?)?;
            json!({ "stable": is_stable(&chain)? })
        }
        "group-act" => {
            let spec = chain_args(job)?;
            let chain = assemble_chain(job, &spec)?;
            let acted = apply_group_element(&chain, &sigma_arg(&spec)?)?;
            chain_json(&acted)?
        }
        other => {
            return Err(Error::SyntaxError {
                position: 0,
                message: format!("unknown command '{other}'"),
            });
        }
    };
    Ok((result, None))
}
