//! Resolves a parsed document into core objects, checking that every name is
//! defined before use and that elements fit their algebras.

use std::collections::BTreeMap;

use pact_core::algebra::{Algebra, Ideal};
use pact_core::envelope::EnvelopingAction;
use pact_core::field::Field;
use pact_core::group::{Group, GroupSubset};
use pact_core::linalg::{LinearMap, Subspace, Vector};
use pact_core::paction::{restrict_global, GlobalAction, PartialAction};

use crate::ast::*;
use crate::element::combination;
use crate::error::{CliError, Result};

/// An ideal together with the algebra it lives in.
#[derive(Debug, Clone)]
pub struct NamedIdeal {
    pub algebra: String,
    pub ideal: Ideal,
}

#[derive(Debug, Clone)]
pub struct ActionValue {
    pub action: PartialAction,
    /// Name of the algebra acted on, for declared actions.
    pub algebra: Option<String>,
    /// Present when every domain is the whole algebra.
    pub global: Option<GlobalAction>,
    /// For `restrict`: the source action with the ideal inclusion.
    pub source: Option<EnvelopingAction>,
    pub admissible: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct Env {
    pub field: Field,
    pub groups: BTreeMap<String, Group>,
    pub algebras: BTreeMap<String, Algebra>,
    pub ideals: BTreeMap<String, NamedIdeal>,
    pub actions: BTreeMap<String, ActionValue>,
}

fn sem(pos: Pos, e: impl std::fmt::Display) -> CliError {
    CliError::semantic(pos, e.to_string())
}

impl Env {
    pub fn group(&self, name: &Text) -> Result<&Group> {
        self.groups.get(name.as_str()).ok_or_else(|| sem(name.pos, format!("undefined group `{}`", name.as_str())))
    }

    pub fn algebra(&self, name: &Text) -> Result<&Algebra> {
        self.algebras.get(name.as_str()).ok_or_else(|| sem(name.pos, format!("undefined algebra `{}`", name.as_str())))
    }

    pub fn ideal(&self, name: &Text) -> Result<&NamedIdeal> {
        self.ideals.get(name.as_str()).ok_or_else(|| sem(name.pos, format!("undefined ideal `{}`", name.as_str())))
    }

    pub fn action(&self, name: &Text) -> Result<&ActionValue> {
        self.actions.get(name.as_str()).ok_or_else(|| sem(name.pos, format!("undefined action `{}`", name.as_str())))
    }

    /// An algebra by name, or the algebra structure of a named ideal.
    pub fn algebra_or_ideal(&self, name: &Text) -> Result<Algebra> {
        if let Some(a) = self.algebras.get(name.as_str()) {
            return Ok(a.clone());
        }
        if let Some(i) = self.ideals.get(name.as_str()) {
            return Ok(self.algebras[&i.algebra].ideal_algebra(&i.ideal));
        }
        Err(sem(name.pos, format!("undefined algebra or ideal `{}`", name.as_str())))
    }

    pub fn subset(&self, group: &Group, elements: &[Text]) -> Result<GroupSubset> {
        elements
            .iter()
            .map(|e| {
                group.index_of(e.as_str()).ok_or_else(|| {
                    sem(e.pos, format!("unknown group element `{}`; the elements are {}", e.as_str(), group.labels().join(", ")))
                })
            })
            .collect()
    }

    fn define<T>(map: &mut BTreeMap<String, T>, kind: &str, name: &Text, value: T) -> Result<()> {
        if map.contains_key(name.as_str()) {
            return Err(sem(name.pos, format!("{kind} `{}` is already defined", name.as_str())));
        }
        map.insert(name.as_str().to_string(), value);
        Ok(())
    }
}

pub fn elaborate(doc: &SpecDocument) -> Result<Env> {
    let mut field = None;
    for item in &doc.items {
        if let Decl::Field(f) = &item.decl {
            if field.is_some() {
                return Err(sem(item.pos, "a second field declaration"));
            }
            field = Some(match f {
                FieldDecl::Rationals => Field::Rationals,
                FieldDecl::Gf(p) => Field::prime(*p).map_err(|e| sem(item.pos, e))?,
            });
        } else if field.is_none() {
            return Err(sem(item.pos, "the field must be declared first"));
        }
    }
    let field = field.ok_or_else(|| sem(Pos { line: 1, col: 1 }, "missing field declaration"))?;
    let mut env = Env {
        field,
        groups: BTreeMap::new(),
        algebras: BTreeMap::new(),
        ideals: BTreeMap::new(),
        actions: BTreeMap::new(),
    };
    for item in &doc.items {
        match &item.decl {
            Decl::Field(_) => {}
            Decl::Group { name, def } => {
                let g = build_group(&env, def, item.pos)?;
                Env::define(&mut env.groups, "group", name, g)?;
            }
            Decl::Algebra { name, def } => {
                let a = build_algebra(&env, def, item.pos)?;
                Env::define(&mut env.algebras, "algebra", name, a)?;
            }
            Decl::Ideal { name, algebra, elements } => {
                let alg = env.algebra(algebra)?;
                let vectors =
                    elements.iter().map(|e| combination(field, alg.labels(), e)).collect::<Result<Vec<Vector>>>()?;
                let ideal = alg.ideal(Subspace::span(field, alg.dim(), &vectors)).map_err(|e| sem(item.pos, e))?;
                let value = NamedIdeal { algebra: algebra.as_str().to_string(), ideal };
                Env::define(&mut env.ideals, "ideal", name, value)?;
            }
            Decl::Action { name, def } => {
                let a = build_action(&env, def, item.pos)?;
                Env::define(&mut env.actions, "action", name, a)?;
            }
            Decl::Command(c) => check_command(&env, c)?,
        }
    }
    Ok(env)
}

fn build_group(env: &Env, def: &GroupDef, pos: Pos) -> Result<Group> {
    match def {
        GroupDef::Cyclic(n) => Group::cyclic(*n).map_err(|e| sem(pos, e)),
        GroupDef::Klein => Ok(Group::klein()),
        GroupDef::Sym(n) => Group::symmetric(*n).map_err(|e| sem(pos, e)),
        GroupDef::Product(a, b) => Ok(Group::direct_product(env.group(a)?, env.group(b)?)),
        GroupDef::Table { rows, labels } => {
            let n = rows.len();
            let labels = if labels.is_empty() { (0..n).map(|i| format!("x{i}")).collect() } else { labels.clone() };
            if labels.len() != n {
                return Err(sem(pos, format!("{} labels for a table with {n} rows", labels.len())));
            }
            Group::from_table(rows.clone(), labels).map_err(|e| sem(pos, e))
        }
    }
}

fn build_algebra(env: &Env, def: &AlgebraDef, pos: Pos) -> Result<Algebra> {
    let field = env.field;
    match def {
        AlgebraDef::Matrix { n, over: None } => Ok(Algebra::matrix(field, *n)),
        AlgebraDef::Matrix { n, over: Some(g) } => Ok(Algebra::matrix_over_group(field, *n, env.group(g)?)),
        AlgebraDef::Upper(n) => Ok(Algebra::upper(field, *n)),
        AlgebraDef::Product(n) => Ok(Algebra::product_field(field, *n)),
        AlgebraDef::GroupAlgebra(g) => Ok(Algebra::group_algebra(field, env.group(g)?)),
        AlgebraDef::Constants { dim, labels, rows, unit } => {
            let labels: Vec<String> =
                if labels.is_empty() { (1..=*dim).map(|i| format!("e{i}")).collect() } else { labels.clone() };
            if labels.len() != *dim {
                return Err(sem(pos, format!("{} labels for dimension {dim}", labels.len())));
            }
            let index = |t: &Text| -> Result<usize> {
                if let Some(k) = labels.iter().position(|l| l == t.as_str()) {
                    return Ok(k);
                }
                match t.as_str().parse::<usize>() {
                    Ok(k) if (1..=*dim).contains(&k) => Ok(k - 1),
                    _ => Err(sem(t.pos, format!("`{}` is not a basis element of this {dim}-dimensional algebra", t.as_str()))),
                }
            };
            let mut entries = Vec::new();
            for row in rows {
                let (i, j) = (index(&row.left)?, index(&row.right)?);
                for (k, c) in &row.terms {
                    let c2 = field.parse(c.as_str()).map_err(|e| sem(c.pos, e))?;
                    entries.push((i, j, index(k)?, c2));
                }
            }
            let unit = unit.as_ref().map(|u| combination(field, &labels, u)).transpose()?;
            Algebra::from_constants(field, *dim, &entries, unit, labels).map_err(|e| sem(pos, e))
        }
    }
}

fn build_action(env: &Env, def: &ActionDef, pos: Pos) -> Result<ActionValue> {
    match def {
        ActionDef::Restrict { source, ideal } => {
            let src = env.action(source)?;
            let global = src
                .global
                .as_ref()
                .ok_or_else(|| sem(source.pos, format!("`{}` is not a global action", source.as_str())))?;
            let named = env.ideal(ideal)?;
            if src.algebra.as_deref() != Some(named.algebra.as_str()) {
                return Err(sem(ideal.pos, format!("`{}` is not an ideal of the algebra acted on", ideal.as_str())));
            }
            let r = restrict_global(global, &named.ideal).map_err(|e| sem(pos, e))?;
            let source = EnvelopingAction { global: global.clone(), embedding: r.inclusion.clone() };
            Ok(ActionValue { action: r.action, algebra: None, global: None, source: Some(source), admissible: Some(r.admissible) })
        }
        ActionDef::Explicit { algebra, group, entries } => {
            let alg = env.algebra(algebra)?.clone();
            let grp = env.group(group)?.clone();
            let field = env.field;
            let n = grp.order();
            let mut domains: Vec<Option<Ideal>> = vec![None; n];
            let mut pairs: Vec<Option<Vec<(Vector, Vector)>>> = vec![None; n];
            let mut seen = vec![false; n];
            for e in entries {
                let g = grp.index_of(e.element.as_str()).ok_or_else(|| {
                    sem(e.element.pos, format!("unknown group element `{}`; the elements are {}", e.element.as_str(), grp.labels().join(", ")))
                })?;
                if std::mem::replace(&mut seen[g], true) {
                    return Err(sem(e.element.pos, format!("`{}` appears twice", e.element.as_str())));
                }
                domains[g] = match &e.ideal {
                    None => None,
                    Some(IdealRef::Whole) => Some(alg.whole()),
                    Some(IdealRef::Zero) => Some(alg.zero_ideal()),
                    Some(IdealRef::Named(name)) => {
                        let named = env.ideal(name)?;
                        if named.algebra != algebra.as_str() {
                            return Err(sem(name.pos, format!("`{}` is an ideal of `{}`", name.as_str(), named.algebra)));
                        }
                        Some(named.ideal.clone())
                    }
                };
                pairs[g] = match &e.map {
                    None => None,
                    Some(MapDef::Identity) => Some(Vec::new()),
                    Some(MapDef::Pairs(ps)) => Some(
                        ps.iter()
                            .map(|(x, y)| Ok((combination(field, alg.labels(), x)?, combination(field, alg.labels(), y)?)))
                            .collect::<Result<_>>()?,
                    ),
                };
            }
            // unspecified: D_1 = A with the identity, other domains zero;
            // `ideal=` missing but `map=` given means the whole algebra
            let e = grp.identity();
            let domains: Vec<Ideal> = (0..n)
                .map(|g| match &domains[g] {
                    Some(d) => d.clone(),
                    None if g == e || pairs[g].is_some() => alg.whole(),
                    None => alg.zero_ideal(),
                })
                .collect();
            let mut all_pairs = Vec::with_capacity(n);
            for g in grp.elements() {
                let src = &domains[grp.inv(g)];
                let identity = g == e && pairs[g].is_none();
                all_pairs.push(match &pairs[g] {
                    Some(p) if !p.is_empty() => p.clone(),
                    Some(_) => src.basis().iter().map(|b| (b.clone(), b.clone())).collect(),
                    None if identity => src.basis().iter().map(|b| (b.clone(), b.clone())).collect(),
                    None => Vec::new(),
                });
            }
            let entry_pos = |g: usize| -> Pos {
                entries.iter().find(|x| grp.index_of(x.element.as_str()) == Some(g)).map_or(pos, |x| x.element.pos)
            };
            for g in grp.elements() {
                let need = domains[grp.inv(g)].dim();
                let span = Subspace::span(field, alg.dim(), &all_pairs[g].iter().map(|p| p.0.clone()).collect::<Vec<_>>());
                if span.dim() != need || !span.is_subspace_of(domains[grp.inv(g)].space()) {
                    return Err(sem(
                        entry_pos(g),
                        format!(
                            "the map for {} must be given on a spanning set of D_{} (dimension {need})",
                            grp.label(g),
                            grp.label(grp.inv(g))
                        ),
                    ));
                }
            }
            let action = PartialAction::from_pairs(grp.clone(), alg.clone(), domains.clone(), &all_pairs)
                .map_err(|err| sem(pos, err))?;
            let global = if domains.iter().all(|d| d.dim() == alg.dim()) {
                let maps: Vec<LinearMap> = grp.elements().map(|g| action.map(g).clone()).collect();
                GlobalAction::new(grp.clone(), alg.clone(), maps).ok()
            } else {
                None
            };
            Ok(ActionValue { action, algebra: Some(algebra.as_str().to_string()), global, source: None, admissible: None })
        }
    }
}

/// Name resolution for command arguments.
fn check_command(env: &Env, c: &Command) -> Result<()> {
    match &c.args {
        CommandArgs::Action(a) | CommandArgs::Assoc { action: a, .. } | CommandArgs::ConditionX { action: a, .. } => {
            let value = env.action(a)?;
            if let CommandArgs::ConditionX { element: Some(g), .. } = &c.args {
                value
                    .action
                    .group()
                    .index_of(g.as_str())
                    .ok_or_else(|| sem(g.pos, format!("unknown group element `{}`", g.as_str())))?;
            }
        }
        CommandArgs::Target(t) => {
            env.algebra_or_ideal(t)?;
        }
        CommandArgs::Group(g) => {
            env.group(g)?;
        }
        CommandArgs::Subset { group, elements } => {
            let g = env.group(group)?;
            env.subset(g, elements)?;
        }
    }
    for x in &c.expect {
        serde_json::from_str::<serde_json::Value>(x.value.as_str())
            .map_err(|_| sem(x.value.pos, format!("`{}` is not a JSON value", x.value.as_str())))?;
    }
    Ok(())
}
