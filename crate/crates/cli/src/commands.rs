use grassmann::delpezzo::{verify_against_series, FAMILY_DEGREE};
use grassmann::hilbert::{
    cross_validate, golden_numerator, numerator_inclusion_exclusion, numerator_symmetric_recursion,
    series_by_recursion, series_from_numerator, CrossOptions, Method, GOLDEN_NUMERATORS,
};
use grassmann::polyring::ExponentVector;
use grassmann::semigroup::{count_gradation, decompose};
use grassmann::trees::parse_tree;
use grassmann::{BigInt, Error, IntPolynomial, Result, TruncatedSeries};
use serde_json::json;

use crate::{Cli, Command, DimMethod, Format, MethodArg, NumeratorMethodArg, SeriesMethod, Suite};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }

    fn verdict(stdout: String, passed: bool) -> Self {
        Output { stdout, code: if passed { 0 } else { 1 } }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capacity(_) => 3,
        Error::NotInSemigroup(_)
        | Error::Inconsistent(_)
        | Error::Degenerate { .. }
        | Error::Internal(_)
        | Error::OutOfPrecision { .. } => 1,
        Error::Dimension { .. }
        | Error::IndexOutOfRange { .. }
        | Error::InvalidPermutation { .. }
        | Error::Parse { .. }
        | Error::InvalidArgument(_)
        | Error::InvalidTree(_)
        | Error::InvalidPair { .. } => 2,
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn big_json(v: &BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))
}

fn method_name(m: DimMethod) -> &'static str {
    match m {
        DimMethod::Oracle => "oracle",
        DimMethod::Series => "series",
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let fmt = cli.format;
    match &cli.command {
        Command::Series { n, max_degree, method } => {
            let n = *n as usize;
            let w: TruncatedSeries = match method {
                SeriesMethod::Recursion => series_by_recursion(n, *max_degree)?,
                SeriesMethod::Numerator => {
                    series_from_numerator(&numerator_inclusion_exclusion(n, None)?, *max_degree)?
                }
            };
            Ok(Output::ok(match fmt {
                Format::Text => line(&w),
                Format::Json => to_json(&w.to_json()),
            }))
        }
        Command::Numerator { n, method, tree } => {
            let n = *n as usize;
            let f = match (method, tree) {
                (NumeratorMethodArg::Ie, None) => numerator_inclusion_exclusion::<BigInt>(n, None)?,
                (NumeratorMethodArg::Ie, Some(spec)) => numerator_inclusion_exclusion(n, Some(&parse_tree(spec)?))?,
                (NumeratorMethodArg::Sym, None) => numerator_symmetric_recursion(n)?,
                (NumeratorMethodArg::Sym, Some(_)) => {
                    return Err(Error::InvalidArgument("--tree applies only to --method ie".into()))
                }
            };
            Ok(Output::ok(match fmt {
                Format::Text => line(&f.numerator),
                Format::Json => {
                    let mut v = serde_json::to_value(f.numerator.to_json()).expect("polynomial serializes");
                    v["method"] = json!(f.method);
                    v["conjectural"] = json!(f.conjectural);
                    to_json(&v)
                }
            }))
        }
        Command::Dim { n, grading, method } => {
            let n = *n as usize;
            if grading.len() != n {
                return Err(Error::Dimension { expected: n, found: grading.len() });
            }
            let lambda = ExponentVector::new(grading.clone());
            let dim = match method {
                DimMethod::Oracle => count_gradation(n, &lambda),
                DimMethod::Series => series_by_recursion::<BigInt>(n, lambda.degree())?.coefficient_at(&lambda)?,
            };
            Ok(Output::ok(match fmt {
                Format::Text => line(&dim),
                Format::Json => to_json(
                    &json!({ "n": n, "grading": grading, "method": method_name(*method), "dim": big_json(&dim) }),
                ),
            }))
        }
        Command::Decompose { tree, values } => {
            let t = parse_tree(tree)?;
            match decompose(&t, values) {
                Ok(m) => Ok(Output::ok(match fmt {
                    Format::Text => line(&m),
                    Format::Json => to_json(&m.to_json()),
                })),
                Err(Error::NotInSemigroup(why)) => Ok(Output::verdict(
                    match fmt {
                        Format::Text => line(format!("not in the semigroup: {why}")),
                        Format::Json => to_json(&json!({ "member": false, "reason": why })),
                    },
                    false,
                )),
                Err(e) => Err(e),
            }
        }
        Command::Relations { tree } => {
            let rels = parse_tree(tree)?.ideal_relations()?;
            Ok(Output::ok(match fmt {
                Format::Text => rels.iter().map(line).collect(),
                Format::Json => to_json(&rels),
            }))
        }
        Command::Verify(args) => match &args.suite {
            Suite::Cross { n, max_degree, methods, permutations, seed } => {
                let methods = methods
                    .iter()
                    .map(|m| match m {
                        MethodArg::Recursion => Method::Recursion,
                        MethodArg::Ie => Method::InclusionExclusion,
                        MethodArg::Sym => Method::Symmetric,
                        MethodArg::Oracle => Method::Oracle,
                    })
                    .collect();
                let options = CrossOptions { methods, permutations: *permutations, seed: *seed };
                let report = cross_validate(*n as usize, *max_degree, &options)?;
                let passed = report.passed();
                Ok(Output::verdict(
                    match fmt {
                        Format::Text => line(&report),
                        Format::Json => to_json(&report),
                    },
                    passed,
                ))
            }
            Suite::Delpezzo => {
                let w5 = series_by_recursion::<BigInt>(5, FAMILY_DEGREE)?;
                let report = verify_against_series(&w5)?;
                let text = match fmt {
                    Format::Text => {
                        let mut s = String::new();
                        for e in &report.entries {
                            s += &format!(
                                "{:<4} D = {:?} -> {:?} grading {:?}: chi {} series {}\n",
                                e.status, e.divisor10, e.divisor5, e.grading, e.chi, e.series_coeff
                            );
                        }
                        s + &format!("{}/{} checks passed\n", report.passed, report.total)
                    }
                    Format::Json => to_json(&report),
                };
                Ok(Output::verdict(text, report.all_passed()))
            }
        },
        Command::Fixtures => {
            let note = "source listing uses z0..z(n-1); printed here as z1..zn";
            let rows: Vec<(usize, IntPolynomial)> =
                GOLDEN_NUMERATORS.iter().map(|&(n, _)| (n, golden_numerator(n).expect("fixture exists"))).collect();
            Ok(Output::ok(match fmt {
                Format::Text => {
                    let mut s = format!("# {note}\n");
                    for (n, f) in &rows {
                        s += &format!("n={n}: {f}\n");
                    }
                    s
                }
                Format::Json => to_json(&json!({
                    "note": note,
                    "numerators": rows.iter().map(|(n, f)| json!({ "n": n, "numerator": f.to_json() })).collect::<Vec<_>>(),
                })),
            }))
        }
    }
}
