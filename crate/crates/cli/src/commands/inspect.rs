use fusion_core::characters::{char_value_with_branch, CharacterBranch, TorusPoint};
use fusion_core::lie::{alcove_reduce, lattice_m, tile_translate};
use fusion_core::{Error, WeylElement};
use serde_json::json;

use super::{algebra_json, CliError, Outcome};
use crate::args::{parse_algebra, parse_point, parse_weight, AlcoveArgs, CharacterArgs};
use crate::output::Output;

fn pair_rows(pairs: &[(&'static str, String)]) -> Vec<Vec<String>> {
    pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect()
}

fn number(x: f64) -> String {
    // Avoid printing "-0".
    let x = if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{x:.12}").trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn character(args: &CharacterArgs) -> Result<Outcome, CliError> {
    let d = parse_algebra(&args.algebra)?;
    let lambda = parse_weight("lambda", &args.lambda, d.rank())?;
    if !d.is_dominant(&lambda) {
        return Err(CliError::Core(Error::NotDominant(lambda)));
    }
    let tau = TorusPoint::new(&d, parse_point("tau", &args.tau, d.rank())?);
    let (value, branch) = char_value_with_branch(&d, &lambda, &tau)?;
    let branch_name = match branch {
        CharacterBranch::WeylQuotient => "weyl-quotient",
        CharacterBranch::WeightSum => "weight-sum",
    };
    let mut notes = Vec::new();
    if branch == CharacterBranch::WeightSum {
        notes.push(format!("τ = {} is singular; evaluated by the weight-sum branch", tau.tau()));
    }
    let shown = if value.im.abs() < 5e-13 {
        number(value.re)
    } else {
        let sign = if value.im < 0.0 { '-' } else { '+' };
        format!("{} {sign} {}i", number(value.re), number(value.im.abs()))
    };
    let output = Output {
        json: json!({
            "algebra": algebra_json(&d),
            "lambda": lambda.to_ints(),
            "tau": tau.tau().to_string(),
            "re": value.re,
            "im": value.im,
            "branch": branch_name,
        }),
        headers: vec!["field", "value"],
        rows: pair_rows(&[
            ("lambda", lambda.to_string()),
            ("tau", tau.tau().to_string()),
            ("character", shown),
            ("branch", branch_name.to_string()),
        ]),
        notes,
    };
    Ok(Outcome { output, code: 0 })
}

pub fn alcove(args: &AlcoveArgs) -> Result<Outcome, CliError> {
    let d = parse_algebra(&args.algebra)?;
    let x = parse_point("point", &args.point, d.rank())?;
    let (c, sigma) = alcove_reduce(&d, &x);
    let mut rows = vec![
        ("point", x.to_string()),
        ("c", c.to_string()),
        ("sigma.w", format!("{:?}", sigma.finite.word())),
        ("sigma.t", sigma.translation.to_string()),
    ];
    let mut json = json!({
        "algebra": algebra_json(&d),
        "point": x.to_string(),
        "c": c.to_string(),
        "sigma": {"w": sigma.finite.word(), "t": sigma.translation.to_string()},
    });
    match tile_translate(&d, &x) {
        Ok((t, y)) => {
            let w = WeylElement::chamber_of(&d, &y);
            let units = lattice_m(&d).coordinates(&t).unwrap_or_default();
            rows.push(("x+t", y.to_string()));
            rows.push(("t", t.to_string()));
            rows.push(("t.units", format!("{units:?}")));
            rows.push(("w", if w.is_identity() { "id".into() } else { format!("{:?}", w.word()) }));
            json["tile"] = json!({
                "y": y.to_string(),
                "t": t.to_string(),
                "t_units": units,
                "w": w.word(),
            });
        }
        Err(Error::OnBoundary(y)) => {
            rows.push(("x+t", format!("{y} (on the boundary of W(C̄))")));
            json["tile"] = json!({"boundary": y.to_string()});
        }
        Err(e) => return Err(e.into()),
    }
    let output = Output {
        json,
        headers: vec!["field", "value"],
        rows: pair_rows(&rows),
        notes: vec![],
    };
    Ok(Outcome { output, code: 0 })
}
