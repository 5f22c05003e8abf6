//! Canonical text form of a [`SpecDocument`]; `parse_spec` reads it back to
//! an equal document.

use std::fmt::Write;

use crate::ast::*;

pub fn print_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for item in &doc.items {
        print_decl(&mut out, &item.decl);
        out.push('\n');
    }
    out
}

fn print_decl(out: &mut String, decl: &Decl) {
    match decl {
        Decl::Field(FieldDecl::Rationals) => out.push_str("field rationals"),
        Decl::Field(FieldDecl::Gf(p)) => write!(out, "field gf {p}").unwrap(),
        Decl::Group { name, def } => {
            write!(out, "group {} = ", name.as_str()).unwrap();
            match def {
                GroupDef::Cyclic(n) => write!(out, "cyclic {n}").unwrap(),
                GroupDef::Klein => out.push_str("klein"),
                GroupDef::Sym(n) => write!(out, "sym {n}").unwrap(),
                GroupDef::Product(a, b) => write!(out, "product {} {}", a.as_str(), b.as_str()).unwrap(),
                GroupDef::Table { rows, labels } => {
                    let rows: Vec<String> =
                        rows.iter().map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")).collect();
                    write!(out, "table [{}]", rows.join("; ")).unwrap();
                    if !labels.is_empty() {
                        write!(out, " labels {}", labels.join(" ")).unwrap();
                    }
                }
            }
        }
        Decl::Algebra { name, def } => {
            write!(out, "algebra {} = ", name.as_str()).unwrap();
            match def {
                AlgebraDef::Matrix { n, over: None } => write!(out, "matrix {n}").unwrap(),
                AlgebraDef::Matrix { n, over: Some(g) } => write!(out, "matrix {n} over {}", g.as_str()).unwrap(),
                AlgebraDef::Upper(n) => write!(out, "upper {n}").unwrap(),
                AlgebraDef::Product(n) => write!(out, "product {n}").unwrap(),
                AlgebraDef::GroupAlgebra(g) => write!(out, "group_algebra {}", g.as_str()).unwrap(),
                AlgebraDef::Constants { dim, labels, rows, unit } => {
                    write!(out, "constants {dim}").unwrap();
                    if !labels.is_empty() {
                        write!(out, " labels {}", labels.join(" ")).unwrap();
                    }
                    out.push_str(" {\n");
                    for row in rows {
                        let terms: Vec<String> =
                            row.terms.iter().map(|(k, c)| format!("{}:{}", k.as_str(), c.as_str())).collect();
                        writeln!(out, "  {} {} -> {}", row.left.as_str(), row.right.as_str(), terms.join(", ")).unwrap();
                    }
                    out.push('}');
                    if let Some(u) = unit {
                        write!(out, " unit {}", u.as_str()).unwrap();
                    }
                }
            }
        }
        Decl::Ideal { name, algebra, elements } => {
            let elements: Vec<&str> = elements.iter().map(Text::as_str).collect();
            write!(out, "ideal {} = span({}; {})", name.as_str(), algebra.as_str(), elements.join(", ")).unwrap();
        }
        Decl::Action { name, def: ActionDef::Restrict { source, ideal } } => {
            write!(out, "action {} = restrict {} to {}", name.as_str(), source.as_str(), ideal.as_str()).unwrap();
        }
        Decl::Action { name, def: ActionDef::Explicit { algebra, group, entries } } => {
            writeln!(out, "action {} on {} by {} {{", name.as_str(), algebra.as_str(), group.as_str()).unwrap();
            for e in entries {
                let mut parts = Vec::new();
                match &e.ideal {
                    Some(IdealRef::Whole) => parts.push("ideal=whole".to_string()),
                    Some(IdealRef::Zero) => parts.push("ideal=zero".to_string()),
                    Some(IdealRef::Named(n)) => parts.push(format!("ideal={}", n.as_str())),
                    None => {}
                }
                match &e.map {
                    Some(MapDef::Identity) => parts.push("map=id".to_string()),
                    Some(MapDef::Pairs(p)) => {
                        let p: Vec<String> = p.iter().map(|(x, y)| format!("{} -> {}", x.as_str(), y.as_str())).collect();
                        parts.push(format!("map=[{}]", p.join(", ")));
                    }
                    None => {}
                }
                writeln!(out, "  {}: {}", e.element.as_str(), parts.join(", ")).unwrap();
            }
            out.push('}');
        }
        Decl::Command(c) => {
            write!(out, "cmd {}", c.verb.name()).unwrap();
            match &c.args {
                CommandArgs::Action(a) | CommandArgs::Target(a) | CommandArgs::Group(a) => {
                    write!(out, " {}", a.as_str()).unwrap()
                }
                CommandArgs::Assoc { action, power } => {
                    write!(out, " {}", action.as_str()).unwrap();
                    if let Some(p) = power {
                        write!(out, " power {}", p.as_str()).unwrap();
                    }
                }
                CommandArgs::Subset { group, elements } => {
                    let e: Vec<&str> = elements.iter().map(Text::as_str).collect();
                    write!(out, " {} {{{}}}", group.as_str(), e.join(", ")).unwrap();
                }
                CommandArgs::ConditionX { action, element } => {
                    write!(out, " {}", action.as_str()).unwrap();
                    if let Some(g) = element {
                        write!(out, " {}", g.as_str()).unwrap();
                    }
                }
            }
            if !c.expect.is_empty() {
                let e: Vec<String> = c.expect.iter().map(|x| format!("{}={}", x.key.as_str(), x.value.as_str())).collect();
                write!(out, " expect {}", e.join(", ")).unwrap();
            }
        }
    }
}

/// One declaration in canonical form, without a trailing newline.
pub fn print_decl_line(decl: &Decl) -> String {
    let mut out = String::new();
    print_decl(&mut out, decl);
    out
}
