//! Resolution of raw sections into typed objects and queries.

use std::collections::BTreeMap;

use leafalg::linalg::Matrix;
use leafalg::{
    parse_form, parse_multivector, parse_polynomial, Error, Form, Ideal, MonomialOrder,
    Multivector, Polynomial, Rational, Scalar, VarContext,
};

use crate::error::CliError;
use crate::spec::{parse_sections, Located, Section};

#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    pub labels: Vec<String>,
    pub relations: Vec<(usize, usize, Vec<Rational>)>,
}

#[derive(Clone, Debug)]
pub struct ModuleSpec {
    pub dim: usize,
    /// One matrix per basis element of the algebra, zero when unlisted.
    pub actions: Vec<Matrix<Rational>>,
}

#[derive(Clone, Debug)]
pub enum QueryKind {
    CheckPoisson {
        point: Option<Vec<Rational>>,
    },
    LeafConnection {
        ideal: Ideal,
        point: Option<Vec<Rational>>,
        alpha: Form,
        section: Multivector,
    },
    FlatSections {
        ideal: Ideal,
        point: Vec<Rational>,
        grade: usize,
    },
    Schouten {
        left: Multivector,
        right: Multivector,
    },
    DerBasis {
        ideal: Ideal,
    },
    RegularIntegral {
        ideal: Ideal,
        fields: Vec<Multivector>,
    },
    LieHomology {
        algebra: AlgebraSpec,
    },
    LieCohomology {
        algebra: AlgebraSpec,
        module: Option<ModuleSpec>,
    },
    CharClass {
        algebra: AlgebraSpec,
        ideal: Vec<Vec<Rational>>,
        projection: Option<Vec<Vec<Rational>>>,
    },
}

#[derive(Clone, Debug)]
pub struct Query {
    pub command: String,
    /// Arguments as written, echoed into the report.
    pub args: Vec<(String, String)>,
    pub kind: QueryKind,
}

#[derive(Clone, Debug)]
pub struct Spec {
    pub ctx: VarContext,
    pub bivector: Option<Multivector>,
    pub queries: Vec<Query>,
}

fn expr_error(loc: &Located, e: Error) -> CliError {
    match e {
        Error::Parse { pos, msg } => loc.error_at(pos, msg),
        other => loc.error(other.to_string()),
    }
}

fn parse_rational(loc: &Located) -> Result<Rational, CliError> {
    let empty = VarContext::new(Vec::<String>::new()).expect("empty context");
    let p: Polynomial = parse_polynomial(&loc.text, &empty).map_err(|e| expr_error(loc, e))?;
    Ok(p.constant_term())
}

fn parse_list_of_rationals(loc: &Located) -> Result<Vec<Rational>, CliError> {
    if loc.text.is_empty() {
        return Ok(Vec::new());
    }
    loc.split(',').iter().map(parse_rational).collect()
}

/// Coordinates of a linear combination of basis labels, such as `e - 2*h`.
fn parse_linear(loc: &Located, labels: &VarContext) -> Result<Vec<Rational>, CliError> {
    let p: Polynomial = parse_polynomial(&loc.text, labels).map_err(|e| expr_error(loc, e))?;
    let mut out = vec![Rational::from_int(0); labels.len()];
    for (m, c) in p.terms() {
        if m.degree() != 1 {
            return Err(loc.error("expected a linear combination of basis elements"));
        }
        let i = m.exponents().iter().position(|&e| e == 1).expect("degree one");
        out[i] = c.clone();
    }
    Ok(out)
}

fn identifier(loc: &Located) -> Result<String, CliError> {
    let ok = loc
        .text
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && loc.text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(loc.text.clone())
    } else {
        Err(loc.error(format!("`{}` is not a valid name", loc.text)))
    }
}

fn section_name(s: &Section) -> Result<&Located, CliError> {
    s.name
        .as_ref()
        .ok_or_else(|| s.header.error(format!("[{}] needs a name", s.kind)))
}

fn insert_unique<T>(map: &mut BTreeMap<String, T>, name: &Located, value: T) -> Result<(), CliError> {
    if map.contains_key(&name.text) {
        return Err(name.error(format!("`{}` is defined twice", name.text)));
    }
    map.insert(name.text.clone(), value);
    Ok(())
}

struct Resolver {
    ctx: VarContext,
    order: MonomialOrder,
    ideals: BTreeMap<String, Ideal>,
    points: BTreeMap<String, Vec<Rational>>,
    fields: BTreeMap<String, Multivector>,
    forms: BTreeMap<String, Form>,
    algebras: BTreeMap<String, AlgebraSpec>,
    modules: BTreeMap<String, (String, ModuleSpec)>,
}

pub fn resolve(text: &str, order: MonomialOrder) -> Result<Spec, CliError> {
    let sections = parse_sections(text)?;
    let vars: Vec<&Section> = sections.iter().filter(|s| s.kind == "variables").collect();
    let ctx = match vars.as_slice() {
        [] => VarContext::new(Vec::<String>::new()).expect("empty context"),
        [s] => {
            let mut names = Vec::new();
            for line in &s.lines {
                for n in line.split(',') {
                    if !n.text.is_empty() {
                        names.push(identifier(&n)?);
                    }
                }
            }
            VarContext::new(names).map_err(|e| s.header.error(e.to_string()))?
        }
        [_, second, ..] => return Err(second.header.error("[variables] given twice")),
    };
    let mut r = Resolver {
        ctx,
        order,
        ideals: BTreeMap::new(),
        points: BTreeMap::new(),
        fields: BTreeMap::new(),
        forms: BTreeMap::new(),
        algebras: BTreeMap::new(),
        modules: BTreeMap::new(),
    };
    let mut bivector = None;
    let mut queries = Vec::new();
    for s in &sections {
        match s.kind.as_str() {
            "variables" => {}
            "bivector" => {
                if bivector.is_some() {
                    return Err(s.header.error("[bivector] given twice"));
                }
                bivector = Some(r.bivector(s)?);
            }
            "ideal" => {
                let name = section_name(s)?;
                let ideal = r.ideal(s)?;
                insert_unique(&mut r.ideals, name, ideal)?;
            }
            "point" => {
                let name = section_name(s)?;
                let mut values = Vec::new();
                for line in &s.lines {
                    values.extend(parse_list_of_rationals(line)?);
                }
                r.check_point_len(&s.header, &values)?;
                insert_unique(&mut r.points, name, values)?;
            }
            "fields" | "forms" => r.tensors(s)?,
            "lie" => {
                let name = section_name(s)?;
                let alg = lie_section(s, &name.text)?;
                insert_unique(&mut r.algebras, name, alg)?;
            }
            "module" => {
                let name = section_name(s)?;
                let m = r.module_section(s)?;
                insert_unique(&mut r.modules, name, m)?;
            }
            "query" => {}
            other => return Err(s.header.error(format!("unknown section [{other}]"))),
        }
    }
    for s in sections.iter().filter(|s| s.kind == "query") {
        let q = r.query(s)?;
        let needs_bivector = matches!(
            q.kind,
            QueryKind::CheckPoisson { .. } | QueryKind::LeafConnection { .. } | QueryKind::FlatSections { .. }
        );
        if needs_bivector && bivector.is_none() {
            return Err(CliError::semantic(
                "bivector",
                format!("query `{}` on line {} needs a [bivector] section", q.command, s.header.line),
            ));
        }
        queries.push(q);
    }
    Ok(Spec {
        ctx: r.ctx,
        bivector,
        queries,
    })
}

fn lie_section(s: &Section, name: &str) -> Result<AlgebraSpec, CliError> {
    let mut labels: Option<VarContext> = None;
    let mut relations = Vec::new();
    for line in &s.lines {
        let (key, value) = line
            .key_value()
            .ok_or_else(|| line.error("expected `basis = …` or `[a, b] = …`"))?;
        if key.text == "basis" {
            if labels.is_some() {
                return Err(key.error("basis given twice"));
            }
            let names = value
                .split(',')
                .iter()
                .map(identifier)
                .collect::<Result<Vec<_>, _>>()?;
            labels = Some(VarContext::new(names).map_err(|e| value.error(e.to_string()))?);
            continue;
        }
        let ctx = labels
            .as_ref()
            .ok_or_else(|| line.error("`basis = …` must come first"))?;
        let inner = key
            .text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| key.error("expected a bracket `[a, b]`"))?;
        let inner = Located {
            text: inner.to_string(),
            line: key.line,
            col: key.col + 1,
        };
        let pair = inner.split(',');
        if pair.len() != 2 {
            return Err(key.error("a bracket takes two basis elements"));
        }
        let idx = |l: &Located| {
            ctx.index_of(&l.text)
                .ok_or_else(|| l.error(format!("unknown basis element `{}`", l.text)))
        };
        relations.push((idx(&pair[0])?, idx(&pair[1])?, parse_linear(&value, ctx)?));
    }
    let labels = labels.ok_or_else(|| s.header.error("missing `basis = …`"))?;
    Ok(AlgebraSpec {
        name: name.to_string(),
        labels: labels.names().to_vec(),
        relations,
    })
}

impl Resolver {
    fn check_point_len(&self, at: &Located, values: &[Rational]) -> Result<(), CliError> {
        if values.len() != self.ctx.len() {
            return Err(at.error(format!(
                "point has {} coordinates, expected {}",
                values.len(),
                self.ctx.len()
            )));
        }
        Ok(())
    }

    fn bivector(&self, s: &Section) -> Result<Multivector, CliError> {
        let mut total = Multivector::zero(&self.ctx, 2);
        for line in &s.lines {
            let (key, value) = line
                .key_value()
                .ok_or_else(|| line.error("expected `xi xj = polynomial`"))?;
            let names: Vec<&str> = key.text.split_whitespace().collect();
            if names.len() != 2 {
                return Err(key.error("expected two variable names"));
            }
            let i = self.ctx.index_of(names[0]);
            let j = self.ctx.index_of(names[1]);
            let (i, j) = match (i, j) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(key.error("unknown variable in bivector entry")),
            };
            if i >= j {
                return Err(key.error("entries must be upper triangular (first variable earlier)"));
            }
            let p: Polynomial = parse_polynomial(&value.text, &self.ctx).map_err(|e| expr_error(&value, e))?;
            let term = Multivector::coordinate(&self.ctx, i)
                .wedge(&Multivector::coordinate(&self.ctx, j))
                .expect("same context")
                .mul_poly(&p);
            total = total.checked_add(&term).expect("same grade");
        }
        Ok(total)
    }

    fn ideal(&self, s: &Section) -> Result<Ideal, CliError> {
        let mut gens = Vec::new();
        for line in &s.lines {
            gens.push(parse_polynomial(&line.text, &self.ctx).map_err(|e| expr_error(line, e))?);
        }
        Ideal::with_order(&self.ctx, gens, self.order).map_err(|e| s.header.error(e.to_string()))
    }

    fn tensors(&mut self, s: &Section) -> Result<(), CliError> {
        for line in &s.lines {
            let (key, value) = line
                .key_value()
                .ok_or_else(|| line.error("expected `name = expression`"))?;
            identifier(&key)?;
            if s.kind == "fields" {
                let t = parse_multivector(&value.text, &self.ctx).map_err(|e| expr_error(&value, e))?;
                insert_unique(&mut self.fields, &key, t)?;
            } else {
                let t = parse_form(&value.text, &self.ctx).map_err(|e| expr_error(&value, e))?;
                insert_unique(&mut self.forms, &key, t)?;
            }
        }
        Ok(())
    }

    fn module_section(&self, s: &Section) -> Result<(String, ModuleSpec), CliError> {
        let mut kv = BTreeMap::new();
        for line in &s.lines {
            let (key, value) = line
                .key_value()
                .ok_or_else(|| line.error("expected `key = value`"))?;
            if kv.insert(key.text.clone(), (key, value)).is_some() {
                return Err(line.error("key given twice"));
            }
        }
        let (_, alg_name) = kv
            .remove("algebra")
            .ok_or_else(|| s.header.error("missing `algebra = …`"))?;
        let alg = self
            .algebras
            .get(&alg_name.text)
            .ok_or_else(|| alg_name.error(format!("unknown Lie algebra `{}`", alg_name.text)))?;
        let (_, dim_loc) = kv
            .remove("dim")
            .ok_or_else(|| s.header.error("missing `dim = …`"))?;
        let dim: usize = dim_loc
            .text
            .parse()
            .map_err(|_| dim_loc.error("expected a non-negative integer"))?;
        let mut actions = vec![Matrix::zeros(dim, dim); alg.labels.len()];
        for (label, (key, value)) in kv {
            let i = alg
                .labels
                .iter()
                .position(|l| *l == label)
                .ok_or_else(|| key.error(format!("`{label}` is not a basis element of `{}`", alg.name)))?;
            let rows = value.split(';');
            if rows.len() != dim {
                return Err(value.error(format!("expected {dim} rows")));
            }
            for (r, row) in rows.iter().enumerate() {
                let entries: Vec<&str> = row.text.split_whitespace().collect();
                if entries.len() != dim {
                    return Err(row.error(format!("expected {dim} entries")));
                }
                for (c, e) in entries.into_iter().enumerate() {
                    let loc = Located {
                        text: e.to_string(),
                        line: row.line,
                        col: row.col,
                    };
                    actions[i][(r, c)] = parse_rational(&loc)?;
                }
            }
        }
        Ok((
            alg.name.clone(),
            ModuleSpec {
                dim,
                actions,
            },
        ))
    }

    fn query(&self, s: &Section) -> Result<Query, CliError> {
        let mut kv: BTreeMap<String, Located> = BTreeMap::new();
        let mut args = Vec::new();
        for line in &s.lines {
            let (key, value) = line
                .key_value()
                .ok_or_else(|| line.error("expected `key = value`"))?;
            if kv.contains_key(&key.text) {
                return Err(key.error(format!("`{}` given twice", key.text)));
            }
            args.push((key.text.clone(), value.text.clone()));
            kv.insert(key.text.clone(), value);
        }
        let command = kv
            .remove("command")
            .ok_or_else(|| s.header.error("query needs `command = …`"))?;
        args.retain(|(k, _)| k != "command");
        let mut q = QueryArgs { kv, header: &s.header };
        let kind = match command.text.as_str() {
            "check-poisson" => QueryKind::CheckPoisson {
                point: q.optional("point").map(|p| self.point(&p)).transpose()?,
            },
            "leaf-connection" => QueryKind::LeafConnection {
                ideal: self.ideal_ref(&q.required("ideal")?)?,
                point: q.optional("point").map(|p| self.point(&p)).transpose()?,
                alpha: self.form_ref(&q.required("alpha")?)?,
                section: self.field_ref(&q.required("section")?)?,
            },
            "flat-sections" => QueryKind::FlatSections {
                ideal: self.ideal_ref(&q.required("ideal")?)?,
                point: self.point(&q.required("point")?)?,
                grade: match q.optional("grade") {
                    None => 1,
                    Some(g) => g.text.parse().ok().filter(|&g| g >= 1).ok_or_else(|| g.error("expected a positive integer"))?,
                },
            },
            "schouten" => QueryKind::Schouten {
                left: self.field_ref(&q.required("left")?)?,
                right: self.field_ref(&q.required("right")?)?,
            },
            "der-basis" => QueryKind::DerBasis {
                ideal: self.ideal_ref(&q.required("ideal")?)?,
            },
            "regular-integral" => {
                let ideal = self.ideal_ref(&q.required("ideal")?)?;
                let list = q.required("fields")?;
                let fields = list
                    .split(',')
                    .iter()
                    .map(|f| self.field_ref(f))
                    .collect::<Result<_, _>>()?;
                QueryKind::RegularIntegral { ideal, fields }
            }
            "lie-homology" => QueryKind::LieHomology {
                algebra: self.algebra_ref(&q.required("algebra")?)?,
            },
            "lie-cohomology" => {
                let algebra = self.algebra_ref(&q.required("algebra")?)?;
                let module = match q.optional("module") {
                    None => None,
                    Some(m) => {
                        let (alg, spec) = self
                            .modules
                            .get(&m.text)
                            .ok_or_else(|| m.error(format!("unknown module `{}`", m.text)))?;
                        if *alg != algebra.name {
                            return Err(m.error(format!("module `{}` is over `{alg}`", m.text)));
                        }
                        Some(spec.clone())
                    }
                };
                QueryKind::LieCohomology { algebra, module }
            }
            "char-class" => {
                let algebra = self.algebra_ref(&q.required("algebra")?)?;
                let labels = VarContext::new(algebra.labels.clone()).expect("validated labels");
                let basis = q.required("ideal")?;
                let ideal = if basis.text.is_empty() {
                    Vec::new()
                } else {
                    basis
                        .split(',')
                        .iter()
                        .map(|v| parse_linear(v, &labels))
                        .collect::<Result<_, _>>()?
                };
                let projection = match q.optional("projection") {
                    None => None,
                    Some(p) => {
                        let images: Vec<Vec<Rational>> = p
                            .split(',')
                            .iter()
                            .map(|v| parse_linear(v, &labels))
                            .collect::<Result<_, _>>()?;
                        if images.len() != labels.len() {
                            return Err(p.error(format!(
                                "projection lists {} images, expected one per basis element ({})",
                                images.len(),
                                labels.len()
                            )));
                        }
                        Some(images)
                    }
                };
                QueryKind::CharClass {
                    algebra,
                    ideal,
                    projection,
                }
            }
            other => return Err(command.error(format!("unknown command `{other}`"))),
        };
        q.finish()?;
        Ok(Query {
            command: command.text,
            args,
            kind,
        })
    }

    fn point(&self, loc: &Located) -> Result<Vec<Rational>, CliError> {
        if let Some(p) = self.points.get(&loc.text) {
            return Ok(p.clone());
        }
        let first = loc.text.chars().next();
        if first.is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(loc.error(format!("unknown point `{}`", loc.text)));
        }
        let values = parse_list_of_rationals(loc)?;
        self.check_point_len(loc, &values)?;
        Ok(values)
    }

    fn ideal_ref(&self, loc: &Located) -> Result<Ideal, CliError> {
        self.ideals
            .get(&loc.text)
            .cloned()
            .ok_or_else(|| loc.error(format!("unknown ideal `{}`", loc.text)))
    }

    fn field_ref(&self, loc: &Located) -> Result<Multivector, CliError> {
        self.fields
            .get(&loc.text)
            .cloned()
            .ok_or_else(|| loc.error(format!("unknown field `{}`", loc.text)))
    }

    fn form_ref(&self, loc: &Located) -> Result<Form, CliError> {
        self.forms
            .get(&loc.text)
            .cloned()
            .ok_or_else(|| loc.error(format!("unknown form `{}`", loc.text)))
    }

    fn algebra_ref(&self, loc: &Located) -> Result<AlgebraSpec, CliError> {
        self.algebras
            .get(&loc.text)
            .cloned()
            .ok_or_else(|| loc.error(format!("unknown Lie algebra `{}`", loc.text)))
    }
}

struct QueryArgs<'a> {
    kv: BTreeMap<String, Located>,
    header: &'a Located,
}

impl QueryArgs<'_> {
    fn required(&mut self, key: &str) -> Result<Located, CliError> {
        self.kv
            .remove(key)
            .ok_or_else(|| self.header.error(format!("query needs `{key} = …`")))
    }

    fn optional(&mut self, key: &str) -> Option<Located> {
        self.kv.remove(key)
    }

    fn finish(self) -> Result<(), CliError> {
        match self.kv.into_iter().next() {
            None => Ok(()),
            Some((k, v)) => Err(v.error(format!("unexpected key `{k}`"))),
        }
    }
}
