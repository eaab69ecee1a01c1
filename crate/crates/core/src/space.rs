//! Bit-exact space accounting.
//!
//! Every structure describes its stored components as a [`SpaceNode`] tree.
//! A group's bits are the sum of its children, and the root total equals the
//! logical payload written by the serializer. In-memory tables that are
//! rebuilt deterministically on load are listed separately under `derived`
//! and excluded from the total.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceNode {
    pub name: String,
    pub bits: u64,
    pub children: Vec<SpaceNode>,
}

impl SpaceNode {
    pub fn leaf(name: &str, bits: u64) -> Self {
        SpaceNode {
            name: name.to_string(),
            bits,
            children: Vec::new(),
        }
    }

    pub fn group(name: &str, children: Vec<SpaceNode>) -> Self {
        SpaceNode {
            name: name.to_string(),
            bits: children.iter().map(|c| c.bits).sum(),
            children,
        }
    }

    /// Child (or descendant) by slash-separated path, e.g. `"B/payload"`.
    pub fn find(&self, path: &str) -> Option<&SpaceNode> {
        let mut node = self;
        for part in path.split('/').filter(|p| !p.is_empty()) {
            node = node.children.iter().find(|c| c.name == part)?;
        }
        Some(node)
    }

    /// Bits at `path`, or 0 when absent.
    pub fn bits_at(&self, path: &str) -> u64 {
        self.find(path).map_or(0, |n| n.bits)
    }

    /// Whether every group equals the sum of its children.
    pub fn is_consistent(&self) -> bool {
        self.children.is_empty()
            || (self.bits == self.children.iter().map(|c| c.bits).sum::<u64>()
                && self.children.iter().all(SpaceNode::is_consistent))
    }

    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), json!(self.name));
        obj.insert("bits".into(), json!(self.bits));
        if !self.children.is_empty() {
            obj.insert(
                "children".into(),
                Value::Array(self.children.iter().map(SpaceNode::to_json).collect()),
            );
        }
        Value::Object(obj)
    }
}

/// Measured space of one built structure.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceReport {
    pub structure: String,
    pub root: SpaceNode,
    pub derived: Vec<SpaceNode>,
    pub context: BTreeMap<String, Value>,
    /// Number of array cells the structure answers for.
    pub elements: u64,
}

impl SpaceReport {
    pub fn new(structure: &str, root: SpaceNode, elements: u64) -> Self {
        SpaceReport {
            structure: structure.to_string(),
            root,
            derived: Vec::new(),
            context: BTreeMap::new(),
            elements,
        }
    }

    pub fn with_context(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.context.insert(key.to_string(), value.into());
        self
    }

    pub fn with_derived(mut self, node: SpaceNode) -> Self {
        self.derived.push(node);
        self
    }

    pub fn total_bits(&self) -> u64 {
        self.root.bits
    }

    pub fn bits_per_element(&self) -> f64 {
        if self.elements == 0 {
            0.0
        } else {
            self.total_bits() as f64 / self.elements as f64
        }
    }

    pub fn bits_at(&self, path: &str) -> u64 {
        self.root.bits_at(path)
    }

    pub fn to_json(&self) -> Value {
        // serde_json's default map is ordered, so key order is stable
        json!({
            "structure": self.structure,
            "total_bits": self.total_bits(),
            "elements": self.elements,
            "bits_per_element": self.bits_per_element(),
            "components": self.root.to_json(),
            "derived": Value::Array(self.derived.iter().map(SpaceNode::to_json).collect()),
            "context": Value::Object(self.context.clone().into_iter().collect()),
        })
    }
}

/// Pretty JSON rendering of a report.
pub fn emit_report(report: &SpaceReport) -> String {
    serde_json::to_string_pretty(&report.to_json()).expect("report serializes")
}
