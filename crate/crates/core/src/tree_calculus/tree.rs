use std::fmt;
use std::str::FromStr;

use crate::cantor_model::Word;
use crate::error::{Error, Result};

/// Rooted planar tree in which every internal node has the same number of children.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    /// A single caret with `arity` leaves.
    pub fn caret(arity: usize) -> Tree {
        Tree::Node(vec![Tree::Leaf; arity])
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(ch) => ch.iter().map(Tree::leaf_count).sum(),
        }
    }

    pub fn caret_count(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(ch) => 1 + ch.iter().map(Tree::caret_count).sum::<usize>(),
        }
    }

    /// Arity of internal nodes, `None` for a bare leaf. Errors if not uniform.
    pub fn arity(&self) -> Result<Option<usize>> {
        fn go(t: &Tree, found: &mut Option<usize>) -> Result<()> {
            if let Tree::Node(ch) = t {
                match *found {
                    None => *found = Some(ch.len()),
                    Some(a) if a != ch.len() => return Err(Error::ArityMismatch(a, ch.len())),
                    _ => {}
                }
                for c in ch {
                    go(c, found)?;
                }
            }
            Ok(())
        }
        let mut found = None;
        go(self, &mut found)?;
        if found.is_some_and(|a| a < 2) {
            return Err(Error::Invalid("internal nodes need at least two children".into()));
        }
        Ok(found)
    }

    /// Root-to-leaf paths in left-to-right order.
    pub fn leaf_words(&self) -> Vec<Word> {
        fn go(t: &Tree, path: &mut Vec<u8>, out: &mut Vec<Word>) {
            match t {
                Tree::Leaf => out.push(Word(path.clone())),
                Tree::Node(ch) => {
                    for (i, c) in ch.iter().enumerate() {
                        path.push(i as u8);
                        go(c, path, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Rebuilds the tree whose leaves are exactly `words` (a complete prefix code).
    pub fn from_leaf_words(arity: usize, words: &[Word]) -> Result<Tree> {
        fn go(arity: usize, words: &[&[u8]]) -> Result<Tree> {
            if words.len() == 1 && words[0].is_empty() {
                return Ok(Tree::Leaf);
            }
            if words.iter().any(|w| w.is_empty()) || words.is_empty() {
                return Err(Error::Invalid("leaf words do not form a complete prefix code".into()));
            }
            let mut children = Vec::with_capacity(arity);
            for letter in 0..arity as u8 {
                let sub: Vec<&[u8]> = words
                    .iter()
                    .filter(|w| w[0] == letter)
                    .map(|w| &w[1..])
                    .collect();
                children.push(go(arity, &sub)?);
            }
            if children.iter().map(Tree::leaf_count).sum::<usize>() != words.len() {
                return Err(Error::Invalid("leaf word outside the alphabet".into()));
            }
            Ok(Tree::Node(children))
        }
        let slices: Vec<&[u8]> = words.iter().map(|w| w.letters()).collect();
        go(arity, &slices)
    }

    /// Attaches a caret at leaf `i` (0-based, left to right).
    pub fn expand_leaf(&self, i: usize, arity: usize) -> Result<Tree> {
        let size = self.leaf_count();
        if i >= size {
            return Err(Error::IndexOutOfRange { index: i, size });
        }
        let mut words = self.leaf_words();
        let w = words.remove(i);
        for l in (0..arity as u8).rev() {
            words.insert(i, w.pushed(l));
        }
        Tree::from_leaf_words(arity, &words)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "."),
            Tree::Node(ch) => {
                write!(f, "(")?;
                for c in ch {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Tree {
    type Err = Error;

    /// Parenthesis notation: `.` is a leaf, `(…)` an internal node.
    fn from_str(s: &str) -> Result<Tree> {
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = parse_tree(s, &chars, &mut pos)?;
        if pos != chars.len() {
            let (at, c) = chars[pos];
            return Err(Error::parse(format!("tree offset {at}"), c.to_string(), "trailing input"));
        }
        tree.arity()?;
        Ok(tree)
    }
}

fn parse_tree(src: &str, chars: &[(usize, char)], pos: &mut usize) -> Result<Tree> {
    let Some(&(at, c)) = chars.get(*pos) else {
        return Err(Error::parse(format!("tree offset {}", src.len()), "", "unexpected end of tree"));
    };
    *pos += 1;
    match c {
        '.' => Ok(Tree::Leaf),
        '(' => {
            let mut children = Vec::new();
            loop {
                match chars.get(*pos) {
                    Some((_, ')')) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_tree(src, chars, pos)?),
                    None => {
                        return Err(Error::parse(format!("tree offset {at}"), "(", "unclosed parenthesis"))
                    }
                }
            }
            if children.len() < 2 {
                return Err(Error::parse(format!("tree offset {at}"), "(", "node needs at least two children"));
            }
            Ok(Tree::Node(children))
        }
        other => Err(Error::parse(format!("tree offset {at}"), other.to_string(), "expected `.` or `(`")),
    }
}
