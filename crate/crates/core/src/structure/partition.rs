use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::StructureError;

/// Disjoint nonempty classes covering `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Partition {
    pub fn new(order: usize, mut classes: Vec<Vec<usize>>) -> Result<Self, StructureError> {
        let mut class_of = vec![usize::MAX; order];
        for (i, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(StructureError::InvalidPartition("empty class"));
            }
            class.sort_unstable();
            for &v in class.iter() {
                if v >= order {
                    return Err(StructureError::InvalidPartition("vertex out of range"));
                }
                if class_of[v] != usize::MAX {
                    return Err(StructureError::InvalidPartition("classes overlap"));
                }
                class_of[v] = i;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(StructureError::InvalidPartition("classes do not cover every vertex"));
        }
        Ok(Partition { classes, class_of })
    }

    /// Classes from a label per vertex; classes are numbered by first
    /// appearance.
    pub fn from_labels(labels: &[usize]) -> Result<Self, StructureError> {
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let c = *index.entry(l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(v);
        }
        Partition::new(labels.len(), classes)
    }

    /// The single-class partition.
    pub fn trivial(order: usize) -> Self {
        Partition {
            classes: vec![(0..order).collect()],
            class_of: vec![0; order],
        }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }
}
