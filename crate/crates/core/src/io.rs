//! The plain-text design format.
//!
//! ```text
//! # optional comment lines
//! 7 3
//! 0 1 2
//! 0 3 4
//! ...
//! ```
//!
//! The first non-comment line holds `n k`; every further non-empty line is
//! one block as space-separated 0-based point indices. [`write_design`] emits
//! exactly this layout, so a normalized design survives a round trip
//! byte for byte.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::design::Design;
use crate::error::{Error, Result};

/// Parses the text format. Blocks are sorted on load.
///
/// Rejects malformed numbers, points out of range and blocks whose size is
/// not `k`. Steiner axioms are not checked here; see [`Design::validate`].
pub fn parse_design(text: &str) -> Result<Design> {
    let mut header: Option<(usize, usize)> = None;
    let mut blocks = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let numbers = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    reason: format!("malformed number {tok:?}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        match header {
            None => {
                if numbers.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno,
                        reason: "header must be `n k`".into(),
                    });
                }
                header = Some((numbers[0], numbers[1]));
            }
            Some((n, k)) => {
                if numbers.len() != k {
                    return Err(Error::Parse {
                        line: lineno,
                        reason: format!("wrong block size: {} points, expected {k}", numbers.len()),
                    });
                }
                if let Some(&p) = numbers.iter().find(|&&p| p >= n) {
                    return Err(Error::Parse {
                        line: lineno,
                        reason: format!("point {p} out of range 0..{n}"),
                    });
                }
                blocks.push(numbers);
            }
        }
    }
    let (n, k) = header.ok_or(Error::Parse {
        line: 0,
        reason: "missing `n k` header".into(),
    })?;
    Ok(Design::new(n, k, blocks).normalized())
}

/// Serializes in block-list order; callers wanting a canonical text should
/// pass a normalized design.
pub fn write_design(design: &Design) -> String {
    let mut out = format!("{} {}\n", design.n(), design.k());
    for block in design.blocks() {
        let line: Vec<String> = block.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Like [`write_design`], preceded by `# ` comment lines.
pub fn write_design_with_header(design: &Design, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&write_design(design));
    out
}

pub fn import(path: impl AsRef<Path>) -> Result<Design> {
    parse_design(&fs::read_to_string(path)?)
}

pub fn export(design: &Design, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_design(&design.normalized()))?;
    Ok(())
}

/// SHA-256 of the normalized serialization, hex encoded.
pub fn content_hash(design: &Design) -> String {
    let text = if design.is_normalized() {
        write_design(design)
    } else {
        write_design(&design.normalized())
    };
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::projective_plane;

    #[test]
    fn fano_round_trip() {
        let fano = projective_plane(2).unwrap();
        let text = write_design(&fano);
        assert!(text.starts_with("7 3\n0 1 6\n0 2 4\n"));
        let back = parse_design(&text).unwrap();
        assert_eq!(back, fano);
        assert_eq!(write_design(&back), text);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fano.txt");
        let fano = projective_plane(2).unwrap();
        export(&fano, &path).unwrap();
        assert_eq!(import(&path).unwrap(), fano);
    }

    #[test]
    fn blocks_are_sorted_on_load() {
        let d = parse_design("# shuffled\n4 2\n3 2\n\n0 1\n1 3\n0 2\n0 3\n2 1\n").unwrap();
        assert_eq!(
            d.blocks(),
            &[
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert!(d.validate().is_valid());
    }

    #[test]
    fn errors() {
        let e = parse_design("7 3\n0 1 2 3\n").unwrap_err();
        assert!(e.to_string().contains("wrong block size"), "{e}");
        let e = parse_design("7 3\n0 1 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_design("7 3\n0 1 7\n").unwrap_err();
        assert!(e.to_string().contains("out of range"));
        assert!(parse_design("# nothing\n").is_err());
        assert!(parse_design("7\n").is_err());
    }

    #[test]
    fn header_comments_are_skipped() {
        let fano = projective_plane(2).unwrap();
        let text =
            write_design_with_header(&fano, &["paramod of abc at block 0, resolution 0".into()]);
        assert!(text.starts_with("# paramod of abc"));
        assert_eq!(parse_design(&text).unwrap(), fano);
    }

    #[test]
    fn content_hash_ignores_block_order() {
        let fano = projective_plane(2).unwrap();
        let mut blocks = fano.blocks().to_vec();
        blocks.reverse();
        let shuffled = Design::new(7, 3, blocks);
        assert_eq!(content_hash(&fano), content_hash(&shuffled));
        assert_eq!(content_hash(&fano).len(), 64);
    }
}
