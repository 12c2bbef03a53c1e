//! Structure files: four labelled element literals `x1=`, `y1=`, `x2=`,
//! `y2=`, one per line, with `#` comments.

use crate::catalog::{an_structure, m11a5_structure};
use crate::error::{Error, Result};
use crate::group::{Element, Group, Origin};

const LABELS: [&str; 4] = ["x1", "y1", "x2", "y2"];

/// Names accepted in place of a file path.
pub const BUILTINS: [&str; 2] = ["paper.an", "paper.m11a5"];

/// Parses structure-file text into `[x1, y1, x2, y2]`.
///
/// Error offsets are byte offsets into `text`.
pub fn parse_structure(group: &Group, text: &str) -> Result<[Element; 4]> {
    let mut slots: [Option<Element>; 4] = Default::default();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((label, literal)) = content.split_once('=') else {
            return Err(Error::parse(start, format!("expected 'label = element', found '{content}'")));
        };
        let label = label.trim();
        let Some(k) = LABELS.iter().position(|l| *l == label) else {
            return Err(Error::parse(start, format!("unknown label '{label}'")));
        };
        if slots[k].is_some() {
            return Err(Error::parse(start, format!("duplicate label '{label}'")));
        }
        let element = group.parse_element(literal.trim()).map_err(|e| match e {
            Error::Parse { offset, message } => Error::parse(start + offset, message),
            other => other,
        })?;
        slots[k] = Some(element);
    }
    let missing: Vec<&str> = LABELS
        .iter()
        .zip(&slots)
        .filter(|(_, s)| s.is_none())
        .map(|(l, _)| *l)
        .collect();
    if !missing.is_empty() {
        return Err(Error::parse(text.len(), format!("missing {}", missing.join(", "))));
    }
    Ok(slots.map(|s| s.expect("checked")))
}

/// The explicit structures shipped with the tool.
pub fn builtin_structure(group: &Group, name: &str) -> Result<[Element; 4]> {
    let perms = match name {
        "paper.an" => match group.origin() {
            Origin::Alternating(n) => an_structure(n)?,
            _ => return Err(Error::invalid("paper.an needs an alternating group A(n)")),
        },
        "paper.m11a5" => {
            if group.name() != "M11 x A5" {
                return Err(Error::invalid("paper.m11a5 needs the group M11 x A5"));
            }
            m11a5_structure()
        }
        _ => return Err(Error::parse(0, format!("unknown builtin structure '{name}'"))),
    };
    let out = perms.as_array().map(|p| group.parse_element(&p.to_string()));
    let [a, b, c, d] = out;
    Ok([a?, b?, c?, d?])
}

/// Formats elements as structure-file text.
pub fn render_structure(elements: [&Element; 4]) -> String {
    LABELS
        .iter()
        .zip(elements)
        .map(|(l, e)| format!("{l} = {e}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Bounds;

    #[test]
    fn round_trip() {
        let g = catalog::group("C(5,5)", Bounds::default()).unwrap();
        let text = "# abelian\nx1 = (1,0)\ny1=(0,1)  # generator\n\nx2 = (1,2)\ny2 = (3,4)\n";
        let els = parse_structure(&g, text).unwrap();
        let again = parse_structure(&g, &render_structure([&els[0], &els[1], &els[2], &els[3]])).unwrap();
        assert_eq!(els, again);
    }

    #[test]
    fn errors_carry_offsets() {
        let g = catalog::group("C(5,5)", Bounds::default()).unwrap();
        let e = parse_structure(&g, "x1 = (1,0)\nz1 = (0,1)\n").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 11, .. }), "{e:?}");
        assert!(parse_structure(&g, "x1 = (1,0)\n").is_err());
        assert!(parse_structure(&g, "x1 = (1,0)\nx1 = (1,0)\n").is_err());
        assert!(parse_structure(&g, "garbage\n").is_err());
    }

    #[test]
    fn builtins_match_group() {
        let a7 = catalog::group("A7", Bounds::default()).unwrap();
        assert!(builtin_structure(&a7, "paper.an").is_ok());
        assert!(builtin_structure(&a7, "paper.m11a5").is_err());
        let p = catalog::group("M11 x A5", Bounds::default()).unwrap();
        assert!(builtin_structure(&p, "paper.m11a5").is_ok());
    }
}
