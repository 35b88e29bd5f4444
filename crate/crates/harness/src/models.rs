//! Model specifications accepted on the command line and in configs.
//!
//! `lm:<d>:<p>`, `flag:<p>`, `cf:<p1>,<p2>,...`, `homog:<p1>,<p2>,...`,
//! `cech:<eps>`, or a path to a complexon file.

use anyhow::{bail, Context, Result};
use complexon::complexon::parse_complexon;
use complexon::rational::parse_rational;
use complexon::sampling::{costa_farber, flag, linial_meshulam};
use complexon::{CechCurveComplexon, Complexon, HomogeneousComplexon, Rational};

fn probs(list: &str) -> Result<Vec<Rational>> {
    list.split(',')
        .map(|t| parse_rational(t.trim()).with_context(|| format!("probability `{t}`")))
        .collect()
}

/// Builds the model; `dmax` truncates the zoo families that need it.
pub fn parse_model(spec: &str, dmax: usize) -> Result<Complexon> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let model = match kind {
        "lm" => {
            let (d, p) = rest.split_once(':').context("expected lm:<d>:<p>")?;
            let d: usize = d.parse().context("lm dimension")?;
            linial_meshulam(d, parse_rational(p)?, dmax.max(d))?
        }
        "flag" => flag(parse_rational(rest)?, dmax)?,
        "cf" => costa_farber(probs(rest)?)?,
        "homog" => Complexon::Homogeneous(HomogeneousComplexon::new(probs(rest)?)?),
        "cech" => {
            let eps: f64 = rest.parse().context("cech epsilon")?;
            crate::bounds::cech_cycle_threshold(eps)?;
            Complexon::Cech(CechCurveComplexon::bouquet(eps, dmax)?)
        }
        _ => {
            let text = std::fs::read_to_string(spec).with_context(|| format!("unknown model `{spec}` and no such file"))?;
            let (w, report) = parse_complexon(&text)?;
            if report.has_warnings() {
                eprintln!("warning: {} entries missing in {spec}, read as 0", report.missing);
            }
            w
        }
    };
    if let Complexon::Homogeneous(h) = &model {
        if h.probs().is_empty() {
            bail!("model needs at least one dimension");
        }
    }
    Ok(model)
}
