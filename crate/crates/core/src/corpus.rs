//! Corpus configuration: the list of groups to check, caps, suites, seed.

use crate::gallery;
use crate::spec::{Caps, GroupSpec, PermInput, SpecError};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusGroup {
    pub name: String,
    pub spec: GroupSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusConfig {
    pub groups: Vec<CorpusGroup>,
    pub caps: Caps,
    /// Suite names; `["all"]` selects every suite.
    pub suites: Vec<String>,
    pub master_seed: u64,
    /// Worker threads; 0 uses the default pool size.
    pub jobs: usize,
}

impl Default for CorpusConfig {
    fn default() -> CorpusConfig {
        CorpusConfig {
            groups: Vec::new(),
            caps: Caps::default(),
            suites: vec!["all".to_string()],
            master_seed: 42,
            jobs: 0,
        }
    }
}

impl CorpusConfig {
    pub fn parse(text: &str) -> Result<CorpusConfig, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    /// Drops groups whose order exceeds `max_order` (probed by BSGS build).
    pub fn filter_max_order(&mut self, max_order: u64) {
        let caps = self.caps.clone();
        self.groups.retain(|g| match g.spec.build(&caps) {
            Ok(built) => built.order() <= &num_bigint::BigUint::from(max_order),
            Err(_) => true, // keep; the runner reports the build error
        });
    }
}

/// Linear action of a 2×2 matrix over `Z/m` on the nonzero vectors,
/// encoded `(x, y) ↦ m·x + y - 1` skipping the origin.
fn gl2_on_nonzero_vectors(m: usize, a: usize, b: usize, c: usize, d: usize) -> PermInput {
    let point_of = |x: usize, y: usize| m * x + y - 1;
    let images: Vec<usize> = (0..m * m - 1)
        .map(|i| {
            let (x, y) = ((i + 1) / m, (i + 1) % m);
            let nx = (a * x + b * y) % m;
            let ny = (c * x + d * y) % m;
            point_of(nx, ny)
        })
        .collect();
    PermInput::Images(images)
}

fn frobenius(modulus: usize, multiplier: usize) -> GroupSpec {
    GroupSpec::Generators {
        degree: modulus,
        gens: vec![
            PermInput::Images((0..modulus).map(|x| (x + 1) % modulus).collect()),
            PermInput::Images((0..modulus).map(|x| (x * multiplier) % modulus).collect()),
        ],
    }
}

/// The built-in corpus: assorted small groups (all of order ≤ 2000) plus
/// every gallery construction.
pub fn default_corpus() -> CorpusConfig {
    let mut groups: Vec<CorpusGroup> = Vec::new();
    let mut push = |name: &str, spec: GroupSpec| {
        groups.push(CorpusGroup {
            name: name.to_string(),
            spec,
        })
    };

    push("c1", GroupSpec::Cyclic(1));
    push("c6", GroupSpec::Cyclic(6));
    push("c8", GroupSpec::Cyclic(8));
    push("c12", GroupSpec::Cyclic(12));
    push("c30", GroupSpec::Cyclic(30));
    push(
        "klein_four",
        GroupSpec::Generators {
            degree: 4,
            gens: vec![
                PermInput::Cycles("(0 1)(2 3)".into()),
                PermInput::Cycles("(0 2)(1 3)".into()),
            ],
        },
    );
    push(
        "q8",
        GroupSpec::Generators {
            degree: 8,
            gens: vec![
                PermInput::Cycles("(0 1 2 3)(4 7 6 5)".into()),
                PermInput::Cycles("(0 4 2 6)(1 5 3 7)".into()),
            ],
        },
    );
    push(
        "sl23",
        GroupSpec::Generators {
            degree: 8,
            gens: vec![
                gl2_on_nonzero_vectors(3, 1, 1, 0, 1),
                gl2_on_nonzero_vectors(3, 0, 2, 1, 0),
            ],
        },
    );
    push("d8", GroupSpec::Dihedral(4));
    push("d10", GroupSpec::Dihedral(5));
    push("d12", GroupSpec::Dihedral(6));
    push("d14", GroupSpec::Dihedral(7));
    push("d16", GroupSpec::Dihedral(8));
    push("sym3", GroupSpec::Symmetric(3));
    push("sym4", GroupSpec::Symmetric(4));
    push("sym5", GroupSpec::Symmetric(5));
    push("sym6", GroupSpec::Symmetric(6));
    push("alt4", GroupSpec::Alternating(4));
    push("alt5", GroupSpec::Alternating(5));
    push("alt6", GroupSpec::Alternating(6));
    push(
        "c2_x_sym3",
        GroupSpec::Direct(vec![GroupSpec::Cyclic(2), GroupSpec::Symmetric(3)]),
    );
    push(
        "sym4_x_sym3",
        GroupSpec::Direct(vec![GroupSpec::Symmetric(4), GroupSpec::Symmetric(3)]),
    );
    push(
        "sym4_sq",
        GroupSpec::Direct(vec![GroupSpec::Symmetric(4), GroupSpec::Symmetric(4)]),
    );
    push("agl15", frobenius(5, 2)); // C5 ⋊ C4, order 20
    push("c11_c5", frobenius(11, 3)); // order 55, odd
    push(
        "c7_c3_semidirect",
        GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic(7)),
            actor: Box::new(GroupSpec::Cyclic(3)),
            action: vec![vec![PermInput::Cycles("(0 2 4 6 1 3 5)".into())]],
        },
    );
    for entry in gallery::build_gallery() {
        push(entry.name, GroupSpec::Gallery(entry.name.to_string()));
    }

    CorpusConfig {
        groups,
        ..CorpusConfig::default()
    }
}
