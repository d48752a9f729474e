//! JSON-lines traces of small steps.

use std::io::{self, Write};

use super::collide::{analyze, StepEvents};
use super::Timeline;

/// Events for every small step between `t_from - 1` and `t_to`.
pub fn events(tl: &mut Timeline, t_from: i64, t_to: i64) -> Vec<StepEvents> {
    (t_from..=t_to).flat_map(|t| tl.transition(t).iter().map(analyze).collect::<Vec<_>>()).collect()
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(out: &mut W, events: &[StepEvents]) -> io::Result<()> {
    for e in events {
        serde_json::to_writer(&mut *out, e)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Labeling;

    #[test]
    fn one_record_per_small_step() {
        let mut tl = Timeline::new(Labeling::new(vec![3, 1, 4, 6, 2, 5]).unwrap(), 3).unwrap();
        let ev = events(&mut tl, 1, 4);
        assert_eq!(ev.len(), 12);
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &ev).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 12);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        for key in ["t", "i", "stone", "carried", "coin_moved", "directions", "collisions"] {
            assert!(first.get(key).is_some(), "missing {key}");
        }
    }
}
