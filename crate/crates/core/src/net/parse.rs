//! NET text format.
//!
//! ```text
//! # comment
//! X a b c d   crossing, darts counterclockwise, strand a-c over
//! V a b c     trivalent vertex, darts counterclockwise
//! O           vertex-free circle
//! ```

use std::collections::HashMap;
use std::str::FromStr;

use super::{Diagram, MapBuilder, NetError, Slot, SlotKind};

pub fn parse(text: &str) -> Result<Diagram, NetError> {
    let mut b = MapBuilder::new();
    // label -> (first slot, line of first use, count)
    let mut seen: HashMap<u64, (Slot, usize, usize)> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut words = body.split_whitespace();
        let Some(tag) = words.next() else { continue };
        let labels: Vec<&str> = words.collect();
        let (kind, expected) = match tag {
            "X" => (SlotKind::Crossing, 4),
            "V" => (SlotKind::Trivalent, 3),
            "O" => (SlotKind::Wire, 0),
            _ => {
                return Err(NetError::UnknownTag {
                    line,
                    tag: tag.to_string(),
                })
            }
        };
        if labels.len() != expected {
            return Err(NetError::Arity {
                line,
                tag: tag.to_string(),
                expected,
                found: labels.len(),
            });
        }
        if kind == SlotKind::Wire {
            b.add_free_loops(1);
            continue;
        }
        let node = b.add_node(kind);
        for (slot, word) in labels.iter().enumerate() {
            let label: u64 =
                word.parse()
                    .ok()
                    .filter(|&l| l > 0)
                    .ok_or_else(|| NetError::BadLabel {
                        line,
                        label: word.to_string(),
                    })?;
            let here = Slot::new(node, slot);
            match seen.get_mut(&label) {
                None => {
                    seen.insert(label, (here, line, 1));
                }
                Some((first, _, count)) => {
                    *count += 1;
                    if *count > 2 {
                        return Err(NetError::LabelCount {
                            line,
                            label,
                            count: *count,
                        });
                    }
                    b.connect(*first, here);
                }
            }
        }
    }
    if let Some((&label, &(_, line, count))) = seen
        .iter()
        .filter(|(_, v)| v.2 != 2)
        .min_by_key(|(_, v)| v.1)
    {
        return Err(NetError::LabelCount { line, label, count });
    }
    let d = b.finish()?;
    d.validate()?;
    Ok(d)
}

impl FromStr for Diagram {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
