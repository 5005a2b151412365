use leafalg::char_class::{characteristic_class, check_ideal, ProjectionOperator};
use leafalg::connection::LeafContext;
use leafalg::derivations::{der_i_basis, is_regular_integral, Regularity, TruncationParams};
use leafalg::lie::{cohomology, homology, LieModule};
use leafalg::linalg::Matrix;
use leafalg::tensor::{schouten_bracket, IndexSubset};
use leafalg::{Error, Form, LieAlgebra, Multivector, PoissonStructure, Rational, Scalar, VarContext};

use crate::model::{AlgebraSpec, Query, QueryKind, Spec};
use crate::report::{join, QueryReport, Report, Status};

#[derive(Clone, Copy, Debug)]
pub struct Flags {
    pub degree_bound: u32,
}

/// Runs every query on its own thread; the report keeps query order.
pub fn run(spec: &Spec, flags: Flags) -> Report {
    let queries = std::thread::scope(|scope| {
        let handles: Vec<_> = spec
            .queries
            .iter()
            .map(|q| scope.spawn(move || run_query(spec, q, flags)))
            .collect();
        handles
            .into_iter()
            .zip(&spec.queries)
            .map(|(h, q)| {
                h.join().unwrap_or_else(|_| {
                    let mut r = QueryReport::new(&q.command, &q.args);
                    r.status = Status::Error;
                    r.put("error", "query panicked");
                    r
                })
            })
            .collect()
    });
    Report {
        variables: spec.ctx.names().to_vec(),
        queries,
    }
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::NotPoisson { .. }
        | Error::NotIntegral(_)
        | Error::PointNotOnLeaf { .. }
        | Error::NotConormal { .. }
        | Error::NotLieAlgebra(_)
        | Error::NotLieModule(_)
        | Error::NotAnIdeal { .. }
        | Error::DependentBasis
        | Error::NotProjection(_)
        | Error::WrongGrade { .. }
        | Error::GradeDeficit { .. } => Status::Failed,
        _ => Status::Error,
    }
}

fn run_query(spec: &Spec, q: &Query, flags: Flags) -> QueryReport {
    let mut r = QueryReport::new(&q.command, &q.args);
    if let Err(e) = dispatch(spec, &q.kind, flags, &mut r) {
        if r.status == Status::Ok {
            r.status = status_of(&e);
        }
        r.put("error", e);
    }
    r
}

fn poisson(spec: &Spec) -> Result<PoissonStructure, Error> {
    let pi = spec.bivector.clone().expect("checked during resolution");
    PoissonStructure::new(pi)
}

fn constant_multivector(ctx: &VarContext, grade: usize, values: &[Rational]) -> Multivector {
    Multivector::from_point_values(ctx, grade, values)
}

fn dispatch(spec: &Spec, kind: &QueryKind, flags: Flags, r: &mut QueryReport) -> Result<(), Error> {
    match kind {
        QueryKind::CheckPoisson { point } => {
            let p = poisson(spec)?;
            r.put("bivector", p.bivector());
            r.put("poisson", p.is_poisson());
            r.put("defect", p.jacobi_defect());
            if let Some(pt) = point {
                r.put("rank", p.rank_at(pt)?);
            }
            if !p.is_poisson() {
                r.status = Status::Failed;
            }
        }
        QueryKind::LeafConnection {
            ideal,
            point,
            alpha,
            section,
        } => {
            let leaf = LeafContext::new(poisson(spec)?, ideal.clone(), point.clone())?;
            r.put("anchor", leaf.poisson().anchor(alpha)?);
            let d = leaf.covariant_derivative_multivector(alpha, section)?;
            r.put("nabla", d.representative());
            if let Some(pt) = point {
                let k = section.grade();
                let span = leaf.tangent_span_at(k, pt)?;
                let coords = leaf.reduce_mod_tangent(d.representative(), pt)?;
                let mut full = vec![Rational::from_int(0); IndexSubset::all(spec.ctx.len(), k).len()];
                for (c, x) in span.complement_indices().into_iter().zip(coords.iter()) {
                    full[c] = x.clone();
                }
                r.put("transversal_dim", coords.len());
                r.put("class_coordinates", join(&coords));
                r.put("class_at_point", constant_multivector(&spec.ctx, k, &full));
            }
        }
        QueryKind::FlatSections { ideal, point, grade } => {
            let leaf = LeafContext::new(poisson(spec)?, ideal.clone(), Some(point.clone()))?;
            let flat = if *grade == 1 {
                leaf.flat_sections_at_point()?
            } else {
                let alphas: Vec<Form> = (0..spec.ctx.len()).map(|i| Form::coordinate(&spec.ctx, i)).collect();
                leaf.parallel_sections_at_point(&alphas, *grade)?
            };
            r.put("grade", grade);
            r.put("transversal_dim", flat.transversal_dim);
            r.put("dim", flat.basis.len());
            r.put_list(
                "basis",
                flat.basis.iter().map(|v| constant_multivector(&spec.ctx, *grade, v)),
            );
        }
        QueryKind::Schouten { left, right } => {
            r.put("grade", left.grade() + right.grade() - 1);
            r.put("bracket", schouten_bracket(left, right)?);
        }
        QueryKind::DerBasis { ideal } => {
            let basis = der_i_basis(ideal, TruncationParams::new(flags.degree_bound))?;
            r.put("ideal", ideal);
            r.put("truncated_at", flags.degree_bound);
            r.put("dim", basis.len());
            r.put_list("basis", &basis);
        }
        QueryKind::RegularIntegral { ideal, fields } => {
            match is_regular_integral(fields, ideal, TruncationParams::new(flags.degree_bound))? {
                Regularity::Regular => r.put("verdict", "regular"),
                Regularity::Inconclusive { truncated_at } => {
                    r.put("verdict", "inconclusive");
                    r.put("truncated_at", truncated_at);
                }
                Regularity::NotRegular { witness, truncated_at } => {
                    r.put("verdict", "not-regular");
                    r.put("truncated_at", truncated_at);
                    r.put("witness", witness);
                }
            }
        }
        QueryKind::LieHomology { algebra } => {
            let g = build_algebra(algebra)?;
            let groups = homology(&g);
            let dims: Vec<usize> = groups.iter().map(|h| h.dim).collect();
            r.put("dims", join(&dims));
            r.put("euler_characteristic", euler(&dims));
            for h in &groups {
                r.put_list(
                    &format!("H{}", h.grade),
                    h.representatives.iter().map(|v| format_chain(g.labels(), h.grade, v)),
                );
            }
        }
        QueryKind::LieCohomology { algebra, module } => {
            let g = build_algebra(algebra)?;
            let m = match module {
                None => LieModule::trivial(&g, 1),
                Some(spec) => LieModule::new(&g, spec.dim, spec.actions.clone())?,
            };
            let groups = cohomology(&g, &m);
            let dims: Vec<usize> = groups.iter().map(|h| h.dim).collect();
            r.put("module_dim", m.dim());
            r.put("dims", join(&dims));
            r.put("euler_characteristic", euler(&dims));
            for h in &groups {
                r.put_list(
                    &format!("H{}", h.grade),
                    h.representatives.iter().map(|v| join(v)),
                );
            }
        }
        QueryKind::CharClass {
            algebra,
            ideal,
            projection,
        } => {
            let g = build_algebra(algebra)?;
            let v = check_ideal(&g, ideal.clone())?;
            let alpha = match projection {
                None => ProjectionOperator::coordinate(&v),
                Some(images) => {
                    let n = g.dim();
                    let mut m = Matrix::zeros(n, n);
                    for (c, img) in images.iter().enumerate() {
                        for (row, x) in img.iter().enumerate() {
                            m[(row, c)] = x.clone();
                        }
                    }
                    ProjectionOperator::new(&v, m)?
                }
            };
            let res = characteristic_class(&v, &alpha)?;
            r.put("ideal_dim", v.dim());
            r.put("h_v_dim", res.h_v_basis.len());
            r.put_list("h_v_basis", res.h_v_basis.iter().map(|b| g.format(b)));
            let q = res.quotient.algebra();
            r.put("quotient_basis", q.labels().join(", "));
            for s in IndexSubset::all(q.dim(), 2) {
                let (a, b) = (s.indices()[0], s.indices()[1]);
                let value = res.cocycle.eval_basis(&[a, b]);
                r.put(
                    &format!("cocycle[{},{}]", q.labels()[a], q.labels()[b]),
                    join(&value),
                );
            }
            r.put("cohomology_dim", res.cohomology_dim());
            r.put("class", join(&res.class));
            r.put("verdict", if res.is_zero() { "zero" } else { "nonzero" });
        }
    }
    Ok(())
}

fn build_algebra(a: &AlgebraSpec) -> Result<LieAlgebra, Error> {
    LieAlgebra::from_brackets(a.labels.clone(), a.relations.clone())
}

fn euler(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(m, &d)| if m % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// `2*e ^ f - h ^ f`-style rendering of a chain in `∧^grade g`.
fn format_chain(labels: &[String], grade: usize, coords: &[Rational]) -> String {
    let mut out = String::new();
    for (s, x) in IndexSubset::all(labels.len(), grade).iter().zip(coords) {
        if *x == Rational::from_int(0) {
            continue;
        }
        let neg = *x < Rational::from_int(0);
        let a = if neg { -x.clone() } else { x.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let word: Vec<&str> = s.indices().iter().map(|&i| labels[i].as_str()).collect();
        let word = if word.is_empty() { "1".to_string() } else { word.join(" ^ ") };
        if a == Rational::from_int(1) {
            out.push_str(&word);
        } else if grade == 0 {
            out.push_str(&a.to_string());
        } else {
            out.push_str(&format!("{a}*{word}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_render() {
        let labels: Vec<String> = ["e", "f", "h"].iter().map(|s| s.to_string()).collect();
        let q = Rational::from_int;
        assert_eq!(format_chain(&labels, 2, &[q(2), q(0), q(-1)]), "2*e ^ f - f ^ h");
        assert_eq!(format_chain(&labels, 0, &[q(1)]), "1");
        assert_eq!(format_chain(&labels, 1, &[q(0), q(0), q(0)]), "0");
    }
}
