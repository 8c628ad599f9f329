use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::KernelError;

/// A named generator of a graded commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Ordered list of generators. The order is the canonical monomial order:
/// every monomial is stored with its factors sorted by table position.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl PartialEq for GeneratorTable {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for GeneratorTable {}

impl GeneratorTable {
    pub fn new<S, I>(generators: I) -> Result<Arc<Self>, KernelError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (S, u32)>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for (name, degree) in generators {
            let name = name.into();
            if name.is_empty() || !is_identifier(&name) {
                return Err(KernelError::InvalidName(name));
            }
            if index.insert(name.clone(), list.len()).is_some() {
                return Err(KernelError::DuplicateGenerator(name));
            }
            list.push(Generator { name, degree });
        }
        Ok(Arc::new(GeneratorTable {
            generators: list,
            index,
        }))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.generators[i].degree
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.generators[i].is_odd()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl fmt::Display for GeneratorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.name, g.degree))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Two tables are compatible when they are the same allocation or list the
/// same generators in the same order.
pub fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_names() {
        let err = GeneratorTable::new([("x", 0), ("x", 1)]).unwrap_err();
        assert_eq!(err, KernelError::DuplicateGenerator("x".into()));
    }

    #[test]
    fn rejects_bad_identifiers() {
        assert!(GeneratorTable::new([("1x", 0)]).is_err());
        assert!(GeneratorTable::new([("a b", 0)]).is_err());
    }

    #[test]
    fn parity_follows_degree() {
        let t = GeneratorTable::new([("x", 0), ("al", 1), ("b", 2), ("p", 3)]).unwrap();
        assert!(!t.is_odd(0));
        assert!(t.is_odd(1));
        assert!(!t.is_odd(2));
        assert!(t.is_odd(3));
        assert_eq!(t.position("p"), Some(3));
    }
}
