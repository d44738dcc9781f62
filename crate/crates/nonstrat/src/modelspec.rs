//! The model spec mini-language used by the CLI:
//!
//! ```text
//! uniform | maxmax | maxmin | mmr | welfare | fair
//! soft:<base>:<precision>
//! qbr:<base>:<lambda>            base is itself a spec
//! lk:<base>:<D>   ch:<base>:<D>  D = comma-separated level weights
//! qlk:<base>:<D>:<lambdas>       lambdas = one precision per level >= 1
//! qch:<base>:<D>:<lambdas>
//! qre:<lambda>
//! mix:<w1>*<m1>+<w2>*<m2>+...    components must be elementary
//! ```

use crate::aggregate::{AggregateError, AggregatedModel};
use crate::elementary::{
    make_fair, make_max_welfare, make_maxmax, make_maxmin, make_minimax_regret, make_soft_variant,
    make_uniform, ElementaryError, ElementaryModel,
};
use crate::model::BehavioralModel;
use crate::strategic::{
    IterativeModel, LevelDistribution, QbrModel, QreModel, StrategicError,
};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("unknown model spec {0:?}")]
    UnknownModel(String),
    #[error("malformed model spec {spec:?}: {reason}")]
    Malformed { spec: String, reason: String },
    #[error("{value:?} in {field} does not parse as a number")]
    BadNumber { field: String, value: String },
    #[error("mixture components must be elementary, {0:?} is not")]
    NotElementary(String),
    #[error(transparent)]
    Strategic(#[from] StrategicError),
    #[error(transparent)]
    Elementary(#[from] ElementaryError),
    #[error(transparent)]
    Aggregate(#[from] AggregateError),
}

fn malformed(spec: &str, reason: &str) -> SpecError {
    SpecError::Malformed {
        spec: spec.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_number(field: &str, value: &str) -> Result<f64, SpecError> {
    value.parse().map_err(|_| SpecError::BadNumber {
        field: field.to_string(),
        value: value.to_string(),
    })
}

fn parse_numbers(field: &str, value: &str) -> Result<Vec<f64>, SpecError> {
    value.split(',').map(|v| parse_number(field, v)).collect()
}

/// Parse a builtin elementary rule or a soft variant of one.
pub fn parse_elementary(spec: &str) -> Result<ElementaryModel, SpecError> {
    match spec {
        "uniform" => return Ok(make_uniform()),
        "maxmax" => return Ok(make_maxmax()),
        "maxmin" => return Ok(make_maxmin()),
        "mmr" => return Ok(make_minimax_regret()),
        "welfare" => return Ok(make_max_welfare()),
        "fair" => return Ok(make_fair()),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("soft:") {
        let (base_spec, precision) = rest
            .rsplit_once(':')
            .ok_or_else(|| malformed(spec, "expected soft:<base>:<precision>"))?;
        let base = parse_elementary(base_spec)?;
        let sense = base.sense().ok_or(ElementaryError::NotScoreable {
            name: base.name().to_string(),
        })?;
        let precision = parse_number("precision", precision)?;
        return Ok(make_soft_variant(&base, precision, sense)?);
    }
    Err(SpecError::UnknownModel(spec.to_string()))
}

/// Parse any model spec into a behavioral model.
pub fn parse_model(spec: &str) -> Result<Arc<dyn BehavioralModel>, SpecError> {
    match parse_elementary(spec) {
        Ok(elementary) => return Ok(Arc::new(elementary)),
        Err(SpecError::UnknownModel(_)) => {}
        Err(other) => return Err(other),
    }

    if let Some(rest) = spec.strip_prefix("qbr:") {
        let (base_spec, lambda) = rest
            .rsplit_once(':')
            .ok_or_else(|| malformed(spec, "expected qbr:<base>:<lambda>"))?;
        let lambda = parse_number("lambda", lambda)?;
        let base = parse_model(base_spec)?;
        return Ok(Arc::new(QbrModel::new(base, lambda)?));
    }

    if let Some(rest) = spec.strip_prefix("qre:") {
        let lambda = parse_number("lambda", rest)?;
        return Ok(Arc::new(QreModel::new(lambda)?));
    }

    for (prefix, hierarchical) in [("lk:", false), ("ch:", true)] {
        if let Some(rest) = spec.strip_prefix(prefix) {
            let (base_spec, d) = rest
                .rsplit_once(':')
                .ok_or_else(|| malformed(spec, "expected <base>:<D>"))?;
            let levels = LevelDistribution::new(parse_numbers("level weights", d)?)?;
            let base = parse_model(base_spec)?;
            let model = if hierarchical {
                IterativeModel::cognitive_hierarchy(base, levels)
            } else {
                IterativeModel::level_k(base, levels)
            };
            return Ok(Arc::new(model));
        }
    }

    for (prefix, hierarchical) in [("qlk:", false), ("qch:", true)] {
        if let Some(rest) = spec.strip_prefix(prefix) {
            let (rest, lambdas) = rest
                .rsplit_once(':')
                .ok_or_else(|| malformed(spec, "expected <base>:<D>:<lambdas>"))?;
            let (base_spec, d) = rest
                .rsplit_once(':')
                .ok_or_else(|| malformed(spec, "expected <base>:<D>:<lambdas>"))?;
            let levels = LevelDistribution::new(parse_numbers("level weights", d)?)?;
            let lambdas = parse_numbers("lambdas", lambdas)?;
            let base = parse_model(base_spec)?;
            let model = if hierarchical {
                IterativeModel::quantal_cognitive_hierarchy(base, levels, lambdas)?
            } else {
                IterativeModel::quantal_level_k(base, levels, lambdas)?
            };
            return Ok(Arc::new(model));
        }
    }

    if let Some(rest) = spec.strip_prefix("mix:") {
        let mut components = Vec::new();
        let mut weights = Vec::new();
        for term in rest.split('+') {
            let (w, component) = term
                .split_once('*')
                .ok_or_else(|| malformed(spec, "expected <weight>*<model> terms joined by +"))?;
            weights.push(parse_number("weight", w)?);
            components.push(
                parse_elementary(component).map_err(|e| match e {
                    SpecError::UnknownModel(s) => SpecError::NotElementary(s),
                    other => other,
                })?,
            );
        }
        return Ok(Arc::new(AggregatedModel::convex(components, weights)?));
    }

    Err(SpecError::UnknownModel(spec.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::prisoners_dilemma;

    #[test]
    fn parses_builtins() {
        for spec in ["uniform", "maxmax", "maxmin", "mmr", "welfare", "fair"] {
            let model = parse_model(spec).unwrap();
            assert_eq!(model.name(), spec);
            model.behavior(&prisoners_dilemma(), 0).unwrap();
        }
    }

    #[test]
    fn parses_soft_and_mix() {
        let soft = parse_model("soft:welfare:1.5").unwrap();
        assert_eq!(soft.name(), "soft:welfare:1.5");
        soft.behavior(&prisoners_dilemma(), 0).unwrap();

        let mix = parse_model("mix:0.5*maxmax+0.5*welfare").unwrap();
        let out = mix.behavior(&prisoners_dilemma(), 0).unwrap();
        assert_eq!(out.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn parses_strategic_specs() {
        let pd = prisoners_dilemma();
        let e = std::f64::consts::E;

        let qbr = parse_model("qbr:uniform:1").unwrap();
        assert_eq!(qbr.name(), "qbr:uniform:1");
        assert!((qbr.behavior(&pd, 0).unwrap().prob(1) - e / (1.0 + e)).abs() < 1e-12);

        let nested = parse_model("qbr:qbr:uniform:1:2").unwrap();
        assert_eq!(nested.name(), "qbr:qbr:uniform:1:2");

        let lk = parse_model("lk:uniform:0.5,0.5").unwrap();
        assert_eq!(lk.behavior(&pd, 0).unwrap().probs(), &[0.25, 0.75]);

        let qch = parse_model("qch:uniform:0.5,0.5:1").unwrap();
        qch.behavior(&pd, 0).unwrap();

        let qre = parse_model("qre:2").unwrap();
        qre.behavior(&pd, 0).unwrap();
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            parse_model("frobnicate"),
            Err(SpecError::UnknownModel(_))
        ));
        assert!(matches!(parse_model("qbr:uniform"), Err(_)));
        assert!(matches!(
            parse_model("qbr:uniform:abc"),
            Err(SpecError::BadNumber { .. })
        ));
        assert!(matches!(
            parse_model("soft:uniform:1"),
            Err(SpecError::Elementary(ElementaryError::NotScoreable { .. }))
        ));
        assert!(matches!(
            parse_model("mix:0.5*qbr:uniform:1+0.5*welfare"),
            Err(_)
        ));
        assert!(matches!(
            parse_model("lk:uniform:0.5,0.6"),
            Err(SpecError::Strategic(_))
        ));
    }
}
