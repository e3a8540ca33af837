//! Element expressions such as `free: [1, 1, 2] c0: u=[1] q^[3, 2]`.

use factorlab_core::{BlockModel, Error, GroupElement, LocalElement, ModelElement};

use crate::error::CliError;

/// One entry of the `free` list.
#[derive(Debug, Clone, PartialEq, Eq)]
enum FreeItem {
    Int(i64),
    Residues(Vec<i64>),
    Label(usize),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, message: impl Into<String>) -> CliError {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        CliError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected '{c}', found '{x}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn keyword(&mut self) -> Result<&'a str, CliError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a segment name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<i64, CliError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let token = &rest[..sign + digits];
        let value = token
            .parse()
            .map_err(|_| self.error(format!("integer {token} out of range")))?;
        self.pos += token.len();
        Ok(value)
    }

    /// `[a, b, …]`, possibly empty.
    fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, CliError>,
    ) -> Result<Vec<T>, CliError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
    }

    fn free_item(&mut self) -> Result<FreeItem, CliError> {
        match self.peek() {
            Some('[') => Ok(FreeItem::Residues(self.list(Self::int)?)),
            Some('p') => {
                self.pos += 1;
                let i = self.int()?;
                usize::try_from(i)
                    .map(FreeItem::Label)
                    .map_err(|_| self.error("prime labels are non-negative"))
            }
            _ => Ok(FreeItem::Int(self.int()?)),
        }
    }
}

/// Parses an element expression and checks that it lies in `model`.
pub fn parse_element(text: &str, model: &BlockModel) -> Result<ModelElement, CliError> {
    let mut cur = Cursor { text, pos: 0 };
    let group = model.group();
    let mut free_counts = vec![0u32; model.prime_classes().len()];
    let mut parts = vec![LocalElement::Identity; model.components().len()];
    let mut seen_free = false;
    let mut seen_part = vec![false; parts.len()];

    while !cur.at_end() {
        let start = cur.pos;
        let name = cur.keyword()?;
        cur.expect(':')?;
        if name == "free" {
            if seen_free {
                cur.pos = start;
                return Err(cur.error("duplicate free segment"));
            }
            seen_free = true;
            let items = cur.list(Cursor::free_item)?;
            for item in items {
                let label = match item {
                    FreeItem::Label(i) if i < free_counts.len() => i,
                    FreeItem::Label(i) => {
                        return Err(CliError::Field(format!("model has no free prime p{i}")))
                    }
                    FreeItem::Int(x) => {
                        if group.rank() > 1 {
                            return Err(CliError::Field(format!(
                                "free entry {x} needs a residue array for {group}"
                            )));
                        }
                        class_label(model, &[x])?
                    }
                    FreeItem::Residues(r) => class_label(model, &r)?,
                };
                free_counts[label] += 1;
            }
        } else if let Some(index) = name.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
            if index >= parts.len() {
                cur.pos = start;
                return Err(cur.error(format!("model has no component {index}")));
            }
            if seen_part[index] {
                cur.pos = start;
                return Err(cur.error(format!("duplicate segment c{index}")));
            }
            seen_part[index] = true;
            let u = cur.keyword()?;
            if u != "u" {
                return Err(cur.error(format!("expected 'u=', found '{u}'")));
            }
            cur.expect('=')?;
            let unit = cur.list(Cursor::int)?;
            let q = cur.keyword()?;
            if q != "q" {
                return Err(cur.error(format!("expected 'q^', found '{q}'")));
            }
            cur.expect('^')?;
            let exps = cur.list(Cursor::int)?;
            let unit_group = model.components()[index].unit_group();
            let unit = unit_group.element(&unit)?;
            let exponents = exps
                .into_iter()
                .map(|k| {
                    u32::try_from(k).map_err(|_| CliError::Field(format!("negative exponent {k}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            parts[index] = LocalElement::power(unit, exponents);
        } else {
            cur.pos = start;
            return Err(cur.error(format!("unknown segment '{name}'")));
        }
    }

    let x = ModelElement::new(free_counts, parts);
    model.check_shape(&x)?;
    let class = model.class_of(&x)?;
    if !class.residues().iter().all(|&r| r == 0) {
        return Err(Error::NotInMonoid {
            class: class.residues().to_vec(),
        }
        .into());
    }
    Ok(x)
}

fn class_label(model: &BlockModel, residues: &[i64]) -> Result<usize, CliError> {
    let c: GroupElement = model.group().element(residues)?;
    model
        .prime_in_class(&c)
        .ok_or_else(|| CliError::Field(format!("class {c} contains no free prime")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    fn b_c3() -> BlockModel {
        parse_instance(r#"{"class_group":[3],"components":[],"free_classes":"all"}"#).unwrap()
    }

    #[test]
    fn free_sequence() {
        let m = b_c3();
        let x = parse_element("free: [1,1,1]", &m).unwrap();
        assert_eq!(x.free_length(), 3);
        assert_eq!(m.format_element(&x), "free: [1, 1, 1]");
    }

    #[test]
    fn unbalanced_sequence_reports_class() {
        let err = parse_element("free: [1,1]", &b_c3()).unwrap_err();
        match err {
            CliError::Core(Error::NotInMonoid { class }) => assert_eq!(class, vec![2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn local_segment() {
        let m = parse_instance(
            r#"{"class_group":[2],"components":[{"rank":1,"unit_group":[2],"unit_class_images":[[1]],"prime_classes":[[1]]}],"free_classes":"all"}"#,
        )
        .unwrap();
        let x = parse_element("c0: u=[1] q^[3]", &m).unwrap();
        assert_eq!(m.format_element(&x), "c0: u=[1] q^[3]");
        let y = parse_element("free:[1] c0: u=[0] q^[1]", &m).unwrap();
        assert_eq!(parse_element(&m.format_element(&y), &m).unwrap(), y);
    }

    #[test]
    fn residue_arrays_for_non_cyclic_groups() {
        let m = parse_instance(r#"{"class_group":[2,2],"free_classes":"all"}"#).unwrap();
        let x = parse_element("free: [[1,0],[0,1],[1,1]]", &m).unwrap();
        assert_eq!(x.free_length(), 3);
        assert!(matches!(
            parse_element("free: [1]", &m),
            Err(CliError::Field(_))
        ));
    }

    #[test]
    fn empty_input_is_the_identity() {
        let m = b_c3();
        assert!(parse_element("", &m).unwrap().is_identity());
        assert!(parse_element("free: []", &m).unwrap().is_identity());
    }

    #[test]
    fn syntax_errors_carry_a_column() {
        let m = b_c3();
        match parse_element("free: [1,, 2]", &m).unwrap_err() {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (1, 10)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_element("foo: [1]", &m),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            parse_element("free: [1] free: [2]", &m),
            Err(CliError::Parse { .. })
        ));
    }
}
