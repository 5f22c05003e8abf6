//! Syntax tree of a spec document. Element expressions are kept as text and
//! resolved against their algebra during elaboration.

use std::fmt;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A piece of source text with the position of its first character.
#[derive(Debug, Clone)]
pub struct Text {
    pub text: String,
    pub pos: Pos,
}

impl PartialEq for Text {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Text {}

impl Text {
    pub fn new(text: impl Into<String>, pos: Pos) -> Text {
        Text { text: text.into(), pos }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldDecl {
    Rationals,
    Gf(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDef {
    Cyclic(usize),
    Klein,
    Sym(usize),
    Product(Text, Text),
    Table { rows: Vec<Vec<usize>>, labels: Vec<String> },
}

/// One line `i j -> k:c, ...` of a structure-constant block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRow {
    pub left: Text,
    pub right: Text,
    pub terms: Vec<(Text, Text)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraDef {
    Matrix { n: usize, over: Option<Text> },
    Upper(usize),
    Product(usize),
    GroupAlgebra(Text),
    Constants { dim: usize, labels: Vec<String>, rows: Vec<ConstantRow>, unit: Option<Text> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealRef {
    Whole,
    Zero,
    Named(Text),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapDef {
    Identity,
    Pairs(Vec<(Text, Text)>),
}

/// Data attached to one group element inside an action block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionEntry {
    pub element: Text,
    pub ideal: Option<IdealRef>,
    pub map: Option<MapDef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionDef {
    Explicit { algebra: Text, group: Text, entries: Vec<ActionEntry> },
    Restrict { source: Text, ideal: Text },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Verify,
    Crossed,
    Assoc,
    Multipliers,
    LrAssoc,
    Semiprime,
    Envelope,
    Morita,
    Kpar,
    Elementary,
    Grading,
    ConditionX,
}

impl Verb {
    pub const ALL: [Verb; 12] = [
        Verb::Verify,
        Verb::Crossed,
        Verb::Assoc,
        Verb::Multipliers,
        Verb::LrAssoc,
        Verb::Semiprime,
        Verb::Envelope,
        Verb::Morita,
        Verb::Kpar,
        Verb::Elementary,
        Verb::Grading,
        Verb::ConditionX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Verify => "verify",
            Verb::Crossed => "crossed",
            Verb::Assoc => "assoc",
            Verb::Multipliers => "multipliers",
            Verb::LrAssoc => "lr_assoc",
            Verb::Semiprime => "semiprime",
            Verb::Envelope => "envelope",
            Verb::Morita => "morita",
            Verb::Kpar => "kpar",
            Verb::Elementary => "elementary",
            Verb::Grading => "grading",
            Verb::ConditionX => "condition_x",
        }
    }

    pub fn from_name(name: &str) -> Option<Verb> {
        Verb::ALL.into_iter().find(|v| v.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandArgs {
    /// `verify`, `crossed`, `envelope`, `morita`: an action name.
    Action(Text),
    /// `assoc <action> [power <element>]`
    Assoc { action: Text, power: Option<Text> },
    /// `multipliers`, `lr_assoc`, `semiprime`: an algebra or ideal name.
    Target(Text),
    /// `kpar <group>`
    Group(Text),
    /// `elementary`, `grading`: `<group> {a, b, ...}`
    Subset { group: Text, elements: Vec<Text> },
    /// `condition_x <action> [<element>]`
    ConditionX { action: Text, element: Option<Text> },
}

/// `key=value` checked against a command result; the value is a JSON literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub key: Text,
    pub value: Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub args: CommandArgs,
    pub expect: Vec<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Field(FieldDecl),
    Group { name: Text, def: GroupDef },
    Algebra { name: Text, def: AlgebraDef },
    Ideal { name: Text, algebra: Text, elements: Vec<Text> },
    Action { name: Text, def: ActionDef },
    Command(Command),
}

/// Equality ignores the position.
#[derive(Debug, Clone)]
pub struct Item {
    pub decl: Decl,
    pub pos: Pos,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.decl == other.decl
    }
}

impl Eq for Item {}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecDocument {
    pub items: Vec<Item>,
}

impl SpecDocument {
    pub fn commands(&self) -> impl Iterator<Item = (&Command, Pos)> {
        self.items.iter().filter_map(|it| match &it.decl {
            Decl::Command(c) => Some((c, it.pos)),
            _ => None,
        })
    }
}
