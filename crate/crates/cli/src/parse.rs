//! Line-oriented parser. A declaration occupies one line; an open `{` joins
//! the following lines until it is closed, each line break inside a block
//! acting as a `;` separator.

use crate::ast::*;
use crate::error::{CliError, Result};

pub fn parse_spec(text: &str) -> Result<SpecDocument> {
    let mut items = Vec::new();
    for line in logical_lines(text)? {
        let mut cur = Cursor::new(line);
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        let pos = cur.pos();
        let decl = parse_decl(&mut cur)?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(CliError::syntax(cur.pos(), format!("unexpected `{}`", cur.rest_word())));
        }
        items.push(Item { decl, pos });
    }
    Ok(SpecDocument { items })
}

type Chars = Vec<(char, Pos)>;

fn logical_lines(text: &str) -> Result<Vec<Chars>> {
    let mut out = Vec::new();
    let mut current: Chars = Vec::new();
    let mut depth = 0i64;
    let mut opened_at = Pos::default();
    for (n, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut last = None;
        for (c, ch) in content.chars().enumerate() {
            let pos = Pos { line: n + 1, col: c + 1 };
            match ch {
                '{' => {
                    if depth == 0 {
                        opened_at = pos;
                    }
                    depth += 1;
                }
                '}' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(CliError::syntax(pos, "unmatched `}`"));
                    }
                }
                _ => {}
            }
            current.push((ch, pos));
            if !ch.is_whitespace() {
                last = Some(ch);
            }
        }
        let end = Pos { line: n + 1, col: content.chars().count() + 1 };
        if depth > 0 {
            if !matches!(last, None | Some('{' | ';' | ',')) {
                current.push((';', end));
            }
            current.push((' ', end));
        } else {
            out.push(std::mem::take(&mut current));
        }
    }
    if depth > 0 {
        return Err(CliError::syntax(opened_at, "unclosed `{`"));
    }
    Ok(out)
}

struct Cursor {
    chars: Chars,
    at: usize,
}

impl Cursor {
    fn new(chars: Chars) -> Cursor {
        Cursor { chars, at: 0 }
    }

    fn at_end(&self) -> bool {
        self.at >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.0)
    }

    fn pos(&self) -> Pos {
        match self.chars.get(self.at) {
            Some(&(_, p)) => p,
            None => self.chars.last().map_or(Pos { line: 1, col: 1 }, |&(_, p)| Pos { line: p.line, col: p.col + 1 }),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.at += 1;
        }
    }

    fn rest_word(&self) -> String {
        self.chars[self.at..].iter().map(|c| c.0).take_while(|c| !c.is_whitespace()).collect()
    }

    fn peek_word(&mut self) -> String {
        self.skip_ws();
        self.chars[self.at..]
            .iter()
            .map(|c| c.0)
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .collect()
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.peek_word() == kw {
            self.at += kw.chars().count();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn unexpected(&self, wanted: &str) -> CliError {
        if self.at_end() {
            CliError::syntax(self.pos(), format!("expected {wanted}, found end of line"))
        } else {
            CliError::syntax(self.pos(), format!("expected {wanted}, found `{}`", self.rest_word()))
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{ch}`")))
        }
    }

    fn eat_arrow(&mut self) -> bool {
        self.skip_ws();
        if self.peek() == Some('-') && self.chars.get(self.at + 1).map(|c| c.0) == Some('>') {
            self.at += 2;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<Text> {
        self.skip_ws();
        let pos = self.pos();
        let word = self.peek_word();
        if word.is_empty() || word.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(self.unexpected(what));
        }
        self.at += word.chars().count();
        Ok(Text::new(word, pos))
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_ws();
        let pos = self.pos();
        let digits: String = self.chars[self.at..].iter().map(|c| c.0).take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.unexpected(what));
        }
        self.at += digits.len();
        digits.parse().map_err(|_| CliError::syntax(pos, format!("{what} out of range")))
    }

    /// A whitespace-free word; brackets inside it must balance.
    fn word(&mut self, what: &str, stops: &[char]) -> Result<Text> {
        self.skip_ws();
        let pos = self.pos();
        let mut depth = 0i32;
        let mut out = String::new();
        while let Some(ch) = self.peek() {
            if ch.is_whitespace() || (depth == 0 && stops.contains(&ch)) {
                break;
            }
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            out.push(ch);
            self.at += 1;
        }
        if out.is_empty() {
            return Err(self.unexpected(what));
        }
        Ok(Text::new(out, pos))
    }

    /// Text up to a top-level stop character, an arrow when `arrow_stops`,
    /// or the standalone word `expect`; surrounding whitespace trimmed.
    fn chunk(&mut self, what: &str, stops: &[char], arrow_stops: bool) -> Result<Text> {
        self.skip_ws();
        let pos = self.pos();
        let mut depth = 0i32;
        let mut in_string = false;
        let start = self.at;
        while let Some(ch) = self.peek() {
            if in_string {
                in_string = ch != '"';
                self.at += 1;
                continue;
            }
            if depth == 0 {
                if stops.contains(&ch) {
                    break;
                }
                if arrow_stops && ch == '-' && self.chars.get(self.at + 1).map(|c| c.0) == Some('>') {
                    break;
                }
                let boundary = self.at == start || self.chars[self.at - 1].0.is_whitespace();
                if boundary && self.word_at("expect") {
                    break;
                }
            }
            match ch {
                '"' => in_string = true,
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            self.at += 1;
        }
        let text: String = self.chars[start..self.at].iter().map(|c| c.0).collect();
        let text = text.trim();
        if text.is_empty() {
            return Err(CliError::syntax(pos, format!("expected {what}")));
        }
        Ok(Text::new(text, pos))
    }

    fn word_at(&self, word: &str) -> bool {
        let n = word.chars().count();
        let here: String = self.chars[self.at..].iter().take(n).map(|c| c.0).collect();
        here == word && self.chars.get(self.at + n).is_none_or(|c| c.0.is_whitespace())
    }
}

fn parse_decl(cur: &mut Cursor) -> Result<Decl> {
    let word = cur.peek_word();
    match word.as_str() {
        "field" => {
            cur.keyword("field");
            if cur.keyword("rationals") {
                Ok(Decl::Field(FieldDecl::Rationals))
            } else if cur.keyword("gf") {
                let p = cur.number("a prime")?;
                Ok(Decl::Field(FieldDecl::Gf(p as u64)))
            } else {
                Err(cur.unexpected("`rationals` or `gf <p>`"))
            }
        }
        "group" => {
            cur.keyword("group");
            let name = cur.ident("a group name")?;
            cur.expect('=')?;
            Ok(Decl::Group { name, def: parse_group(cur)? })
        }
        "algebra" => {
            cur.keyword("algebra");
            let name = cur.ident("an algebra name")?;
            cur.expect('=')?;
            Ok(Decl::Algebra { name, def: parse_algebra(cur)? })
        }
        "ideal" => {
            cur.keyword("ideal");
            let name = cur.ident("an ideal name")?;
            cur.expect('=')?;
            cur.expect_keyword("span")?;
            cur.expect('(')?;
            let algebra = cur.ident("an algebra name")?;
            cur.expect(';')?;
            let mut elements = Vec::new();
            if !cur.eat(')') {
                loop {
                    elements.push(cur.chunk("an element", &[',', ')'], false)?);
                    if cur.eat(')') {
                        break;
                    }
                    cur.expect(',')?;
                }
            }
            Ok(Decl::Ideal { name, algebra, elements })
        }
        "action" => {
            cur.keyword("action");
            let name = cur.ident("an action name")?;
            if cur.eat('=') {
                cur.expect_keyword("restrict")?;
                let source = cur.ident("an action name")?;
                cur.expect_keyword("to")?;
                let ideal = cur.ident("an ideal name")?;
                return Ok(Decl::Action { name, def: ActionDef::Restrict { source, ideal } });
            }
            cur.expect_keyword("on")?;
            let algebra = cur.ident("an algebra name")?;
            cur.expect_keyword("by")?;
            let group = cur.ident("a group name")?;
            let entries = parse_action_block(cur)?;
            Ok(Decl::Action { name, def: ActionDef::Explicit { algebra, group, entries } })
        }
        "cmd" => {
            cur.keyword("cmd");
            Ok(Decl::Command(parse_command(cur)?))
        }
        _ => Err(cur.unexpected("a declaration (`field`, `group`, `algebra`, `ideal`, `action` or `cmd`)")),
    }
}

fn parse_group(cur: &mut Cursor) -> Result<GroupDef> {
    if cur.keyword("cyclic") {
        return Ok(GroupDef::Cyclic(cur.number("the order")?));
    }
    if cur.keyword("klein") {
        return Ok(GroupDef::Klein);
    }
    if cur.keyword("sym") {
        return Ok(GroupDef::Sym(cur.number("the degree")?));
    }
    if cur.keyword("product") {
        let a = cur.ident("a group name")?;
        let b = cur.ident("a group name")?;
        return Ok(GroupDef::Product(a, b));
    }
    if cur.keyword("table") {
        cur.expect('[')?;
        let mut rows = vec![Vec::new()];
        loop {
            cur.skip_ws();
            match cur.peek() {
                Some(']') => {
                    cur.at += 1;
                    break;
                }
                Some(';') => {
                    cur.at += 1;
                    rows.push(Vec::new());
                }
                _ => {
                    let v = cur.number("a table entry")?;
                    rows.last_mut().expect("row").push(v);
                }
            }
        }
        let mut labels = Vec::new();
        if cur.keyword("labels") {
            while !cur.at_end() {
                labels.push(cur.word("a label", &[])?.text);
                cur.skip_ws();
            }
        }
        return Ok(GroupDef::Table { rows, labels });
    }
    Err(cur.unexpected("`cyclic`, `klein`, `sym`, `product` or `table`"))
}

fn parse_algebra(cur: &mut Cursor) -> Result<AlgebraDef> {
    if cur.keyword("matrix") {
        let n = cur.number("the size")?;
        let over = if cur.keyword("over") { Some(cur.ident("a group name")?) } else { None };
        return Ok(AlgebraDef::Matrix { n, over });
    }
    if cur.keyword("upper") {
        return Ok(AlgebraDef::Upper(cur.number("the size")?));
    }
    if cur.keyword("product") {
        return Ok(AlgebraDef::Product(cur.number("the number of factors")?));
    }
    if cur.keyword("group_algebra") {
        return Ok(AlgebraDef::GroupAlgebra(cur.ident("a group name")?));
    }
    if cur.keyword("constants") {
        let dim = cur.number("the dimension")?;
        let mut labels = Vec::new();
        if cur.keyword("labels") {
            loop {
                cur.skip_ws();
                if cur.at_end() || cur.peek() == Some('{') {
                    break;
                }
                labels.push(cur.word("a label", &['{'])?.text);
            }
        }
        cur.expect('{')?;
        let mut rows = Vec::new();
        loop {
            if cur.eat('}') {
                break;
            }
            if cur.eat(';') {
                continue;
            }
            let left = cur.word("a basis element", &[])?;
            let right = cur.word("a basis element", &['-'])?;
            if !cur.eat_arrow() {
                return Err(cur.unexpected("`->`"));
            }
            let mut terms = Vec::new();
            loop {
                let label = cur.word("a basis element", &[':'])?;
                cur.expect(':')?;
                let coeff = cur.word("a coefficient", &[',', ';', '}'])?;
                terms.push((label, coeff));
                if !cur.eat(',') {
                    break;
                }
            }
            rows.push(ConstantRow { left, right, terms });
            if !cur.eat(';') {
                cur.expect('}')?;
                break;
            }
        }
        let unit = if cur.keyword("unit") { Some(cur.chunk("a unit element", &[], false)?) } else { None };
        return Ok(AlgebraDef::Constants { dim, labels, rows, unit });
    }
    Err(cur.unexpected("`matrix`, `upper`, `product`, `group_algebra` or `constants`"))
}

fn parse_action_block(cur: &mut Cursor) -> Result<Vec<ActionEntry>> {
    cur.expect('{')?;
    let mut entries = Vec::new();
    loop {
        if cur.eat('}') {
            break;
        }
        if cur.eat(';') {
            continue;
        }
        let element = cur.word("a group element", &[':'])?;
        cur.expect(':')?;
        let mut entry = ActionEntry { element, ideal: None, map: None };
        loop {
            let key = cur.ident("`ideal` or `map`")?;
            cur.expect('=')?;
            match key.as_str() {
                "ideal" if entry.ideal.is_none() => {
                    let v = cur.ident("an ideal name, `whole` or `zero`")?;
                    entry.ideal = Some(match v.as_str() {
                        "whole" => IdealRef::Whole,
                        "zero" => IdealRef::Zero,
                        _ => IdealRef::Named(v),
                    });
                }
                "map" if entry.map.is_none() => {
                    if cur.keyword("id") {
                        entry.map = Some(MapDef::Identity);
                    } else {
                        cur.expect('[')?;
                        let mut pairs = Vec::new();
                        if !cur.eat(']') {
                            loop {
                                let x = cur.chunk("an element", &[',', ']'], true)?;
                                if !cur.eat_arrow() {
                                    return Err(cur.unexpected("`->`"));
                                }
                                let y = cur.chunk("an element", &[',', ']'], false)?;
                                pairs.push((x, y));
                                if cur.eat(']') {
                                    break;
                                }
                                cur.expect(',')?;
                            }
                        }
                        entry.map = Some(MapDef::Pairs(pairs));
                    }
                }
                "ideal" | "map" => return Err(CliError::syntax(key.pos, format!("`{}` given twice", key.as_str()))),
                other => return Err(CliError::syntax(key.pos, format!("unknown key `{other}`"))),
            }
            if !cur.eat(',') {
                break;
            }
        }
        entries.push(entry);
        if !cur.eat(';') {
            cur.expect('}')?;
            break;
        }
    }
    Ok(entries)
}

fn parse_command(cur: &mut Cursor) -> Result<Command> {
    let verb_text = cur.ident("a command")?;
    let verb = Verb::from_name(verb_text.as_str()).ok_or_else(|| {
        let names: Vec<&str> = Verb::ALL.iter().map(|v| v.name()).collect();
        CliError::syntax(verb_text.pos, format!("unknown command `{}`; expected one of {}", verb_text.as_str(), names.join(", ")))
    })?;
    let args = match verb {
        Verb::Verify | Verb::Crossed | Verb::Envelope | Verb::Morita => CommandArgs::Action(cur.ident("an action name")?),
        Verb::Assoc => {
            let action = cur.ident("an action name")?;
            let power = if cur.keyword("power") { Some(cur.chunk("an element", &[], false)?) } else { None };
            CommandArgs::Assoc { action, power }
        }
        Verb::Multipliers | Verb::LrAssoc | Verb::Semiprime => CommandArgs::Target(cur.ident("an algebra or ideal name")?),
        Verb::Kpar => CommandArgs::Group(cur.ident("a group name")?),
        Verb::Elementary | Verb::Grading => {
            let group = cur.ident("a group name")?;
            cur.expect('{')?;
            let mut elements = Vec::new();
            if !cur.eat('}') {
                loop {
                    elements.push(cur.word("a group element", &[',', '}'])?);
                    if cur.eat('}') {
                        break;
                    }
                    cur.expect(',')?;
                }
            }
            CommandArgs::Subset { group, elements }
        }
        Verb::ConditionX => {
            let action = cur.ident("an action name")?;
            cur.skip_ws();
            let element = if cur.at_end() || cur.word_at("expect") { None } else { Some(cur.word("a group element", &[])?) };
            CommandArgs::ConditionX { action, element }
        }
    };
    let mut expect = Vec::new();
    if cur.keyword("expect") {
        loop {
            let key = cur.ident("a result key")?;
            cur.expect('=')?;
            let value = cur.chunk("a value", &[','], false)?;
            expect.push(Expectation { key, value });
            if !cur.eat(',') {
                break;
            }
        }
    }
    Ok(Command { verb, args, expect })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let doc = parse_spec("field rationals\nalgebra m = matrix 2\ncmd semiprime m\n").unwrap();
        assert_eq!(doc.items.len(), 3);
        assert_eq!(doc.items[2].pos, Pos { line: 3, col: 1 });
    }

    #[test]
    fn malformed_group_points_at_end_of_line() {
        let err = parse_spec("field gf 2\ngroup x = cyclic\n").unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 2, col: 17 }));
        assert!(err.to_string().contains("expected the order"));
    }

    #[test]
    fn blocks_span_lines() {
        let text = "action a on k by z {\n  1: ideal=whole, map=id\n  g: ideal=i, map=[e1 -> e2, e2 -> e1]\n}\n";
        let doc = parse_spec(text).unwrap();
        let Decl::Action { def: ActionDef::Explicit { entries, .. }, .. } = &doc.items[0].decl else { panic!() };
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[1].element.pos, Pos { line: 3, col: 3 });
        let Some(MapDef::Pairs(p)) = &entries[1].map else { panic!() };
        assert_eq!((p[0].0.as_str(), p[0].1.as_str()), ("e1", "e2"));
    }

    #[test]
    fn constants_and_unit() {
        let doc = parse_spec("algebra c = constants 2 labels x y { x x -> x:1; x y -> y:1, x:0; y x -> y:1 } unit x").unwrap();
        let Decl::Algebra { def: AlgebraDef::Constants { dim, labels, rows, unit }, .. } = &doc.items[0].decl else { panic!() };
        assert_eq!((*dim, labels.len(), rows.len()), (2, 2, 3));
        assert_eq!(rows[1].terms.len(), 2);
        assert_eq!(unit.as_ref().unwrap().as_str(), "x");
    }

    #[test]
    fn command_arguments() {
        let doc = parse_spec("cmd assoc c power t@1 + u@g expect associative=false, dim=6\ncmd elementary z {1, g}").unwrap();
        let Decl::Command(c) = &doc.items[0].decl else { panic!() };
        let CommandArgs::Assoc { power, .. } = &c.args else { panic!() };
        assert_eq!(power.as_ref().unwrap().as_str(), "t@1 + u@g");
        assert_eq!(c.expect.len(), 2);
        let Decl::Command(c) = &doc.items[1].decl else { panic!() };
        assert_eq!(c.args, CommandArgs::Subset { group: Text::new("z", Pos::default()), elements: vec![Text::new("1", Pos::default()), Text::new("g", Pos::default())] });
    }

    #[test]
    fn diagnostics() {
        for (text, line, col) in [
            ("field reals", 1, 7),
            ("\n\ncmd frobnicate x", 3, 5),
            ("action a on k by z {\n 1: ideal=whole\n", 1, 20),
            ("ideal i = span(a; e1", 1, 21),
            ("group g = cyclic 2 extra", 1, 20),
        ] {
            let err = parse_spec(text).unwrap_err();
            assert_eq!(err.pos(), Some(Pos { line, col }), "{text}: {err}");
        }
    }
}
