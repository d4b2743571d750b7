//! A small catalog of concrete algebroids: valid ones for regression and
//! property tests, and deliberately broken ones for exercising the
//! diagnostics.

use crate::algebroid::{LieAlgebroid, Section};
use crate::expr::{Coords, ScalarExpr};
use crate::ids::SubbundleSpec;
use crate::sample;

fn zeros(n: usize, p: usize) -> Vec<Vec<Vec<ScalarExpr>>> {
    vec![vec![vec![ScalarExpr::zero(n); p]; p]; p]
}

/// The tangent algebroid of `R^n`: identity anchor, zero structure.
pub fn tangent(n: usize) -> LieAlgebroid {
    let coords = Coords::standard(n);
    let anchor = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|alpha| {
                    if i == alpha {
                        ScalarExpr::one(n)
                    } else {
                        ScalarExpr::zero(n)
                    }
                })
                .collect()
        })
        .collect();
    LieAlgebroid::new(coords, n, anchor, zeros(n, n)).expect("tangent data is well-shaped")
}

/// Rank-3 algebroid over a line with zero anchor and the Levi-Civita
/// structure constants `L^γ_{αβ} = ε_{αβγ}`.
pub fn so3() -> LieAlgebroid {
    let n = 1;
    let coords = Coords::standard(n);
    let mut structure = zeros(n, 3);
    let eps: [(usize, usize, usize, i64); 6] = [
        (1, 2, 3, 1),
        (2, 3, 1, 1),
        (3, 1, 2, 1),
        (2, 1, 3, -1),
        (3, 2, 1, -1),
        (1, 3, 2, -1),
    ];
    for (a, b, c, s) in eps {
        structure[a - 1][b - 1][c - 1] = ScalarExpr::integer(n, s);
    }
    let anchor = vec![vec![ScalarExpr::zero(n); 3]];
    LieAlgebroid::new(coords, 3, anchor, structure).expect("so3 data is well-shaped")
}

/// Line algebroid with anchor `ρ = x1` and trivial bracket.
pub fn anchored_line() -> LieAlgebroid {
    let n = 1;
    let coords = Coords::standard(n);
    let x1 = ScalarExpr::coordinate(n, 1).unwrap();
    LieAlgebroid::new(coords, 1, vec![vec![x1]], zeros(n, 1))
        .expect("anchored line data is well-shaped")
}

/// The affine algebroid of the line: frame maps to `(∂, x∂)`, so
/// `ρ = (1, x1)` and `[t_1, t_2] = t_1`. Nonabelian with nonzero anchor.
pub fn affine_line() -> LieAlgebroid {
    let n = 1;
    let coords = Coords::standard(n);
    let one = ScalarExpr::one(n);
    let x1 = ScalarExpr::coordinate(n, 1).unwrap();
    let mut structure = zeros(n, 2);
    structure[0][1][0] = one.clone();
    structure[1][0][0] = one.neg();
    LieAlgebroid::new(coords, 2, vec![vec![one, x1]], structure)
        .expect("affine line data is well-shaped")
}

/// Rank-3 algebroid over the plane whose frame maps to
/// `(∂_1, ∂_2, x1^2 ∂_2)`: `[t_1, t_3] = 2·x1·t_2`, so both the anchor and
/// the structure functions are non-constant in an essential way.
pub fn shear() -> LieAlgebroid {
    let n = 2;
    let coords = Coords::standard(n);
    let zero = ScalarExpr::zero(n);
    let one = ScalarExpr::one(n);
    let x1 = ScalarExpr::coordinate(n, 1).unwrap();
    let anchor = vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one, x1.pow(2)],
    ];
    let two_x1 = x1.add(&x1);
    let mut structure = zeros(n, 3);
    structure[0][2][1] = two_x1.clone();
    structure[2][0][1] = two_x1.neg();
    LieAlgebroid::new(coords, 3, anchor, structure).expect("shear data is well-shaped")
}

/// Broken example: anchor `ρ = (1, x1)` with zero structure violates the
/// anchor/bracket compatibility at `(α,β,k) = (1,2,1)` with residual 1.
pub fn broken_anchor() -> LieAlgebroid {
    let n = 1;
    let coords = Coords::standard(n);
    let one = ScalarExpr::one(n);
    let x1 = ScalarExpr::coordinate(n, 1).unwrap();
    LieAlgebroid::new(coords, 2, vec![vec![one, x1]], zeros(n, 2))
        .expect("broken anchor data is well-shaped")
}

/// Broken example: a perturbation of the Levi-Civita constants
/// (`L^3_{12} = L^1_{23} = L^1_{31} = 1`, antisymmetric completions) that
/// is antisymmetric but fails the Jacobi identity.
pub fn broken_jacobi() -> LieAlgebroid {
    let n = 1;
    let coords = Coords::standard(n);
    let mut structure = zeros(n, 3);
    let entries: [(usize, usize, usize, i64); 6] = [
        (1, 2, 3, 1),
        (2, 1, 3, -1),
        (2, 3, 1, 1),
        (3, 2, 1, -1),
        (3, 1, 1, 1),
        (1, 3, 1, -1),
    ];
    for (a, b, c, s) in entries {
        structure[a - 1][b - 1][c - 1] = ScalarExpr::integer(n, s);
    }
    let anchor = vec![vec![ScalarExpr::zero(n); 3]];
    LieAlgebroid::new(coords, 3, anchor, structure).expect("broken jacobi data is well-shaped")
}

/// All valid catalog algebroids, labelled.
pub fn validated() -> Vec<(&'static str, LieAlgebroid)> {
    vec![
        ("tangent-1", tangent(1)),
        ("tangent-2", tangent(2)),
        ("tangent-3", tangent(3)),
        ("so3", so3()),
        ("anchored-line", anchored_line()),
        ("affine-line", affine_line()),
        ("shear", shear()),
    ]
}

/// One labelled involutivity problem: a validated algebroid plus a
/// subbundle of generic rank.
pub struct CorpusInstance {
    pub label: String,
    pub algebroid: LieAlgebroid,
    pub subbundle: SubbundleSpec,
}

fn named_instance(label: &str, algebroid: LieAlgebroid, generators: Vec<Vec<&str>>) -> CorpusInstance {
    let coords = algebroid.coords().clone();
    let sections = generators
        .into_iter()
        .map(|row| {
            Section::new(
                row.into_iter()
                    .map(|t| crate::expr::parse_expr(t, &coords).unwrap())
                    .collect(),
            )
        })
        .collect();
    CorpusInstance {
        label: label.to_string(),
        algebroid,
        subbundle: SubbundleSpec::new(sections),
    }
}

/// A corpus of involutivity problems: the named benchmark instances plus
/// seeded random polynomial subbundles over the validated catalog,
/// padded to at least `min_count` instances.
pub fn involutivity_corpus(seed: u64, min_count: usize) -> Vec<CorpusInstance> {
    use rand::{Rng, SeedableRng};
    let mut out = vec![
        named_instance(
            "tr3/coordinate-plane",
            tangent(3),
            vec![vec!["1", "0", "0"], vec!["0", "1", "0"]],
        ),
        named_instance(
            "tr3/contact",
            tangent(3),
            vec![vec!["0", "1", "0"], vec!["1", "0", "x2"]],
        ),
        named_instance("so3/line", so3(), vec![vec!["1", "0", "0"]]),
        named_instance(
            "so3/pair",
            so3(),
            vec![vec!["1", "0", "0"], vec!["0", "1", "0"]],
        ),
        named_instance(
            "shear/anchored-pair",
            shear(),
            vec![vec!["1", "0", "0"], vec!["0", "0", "1"]],
        ),
    ];

    let pool = validated();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut k = 0usize;
    while out.len() < min_count {
        let (label, algebroid) = &pool[k % pool.len()];
        k += 1;
        let p = algebroid.rank();
        if p < 2 {
            continue;
        }
        let r = rng.random_range(1..p);
        let n = algebroid.base_dim();
        // Resample until the generators have generic rank r.
        let spec = loop {
            let sections = (0..r)
                .map(|_| sample::random_section(&mut rng, p, n, 1, 2))
                .collect::<Vec<_>>();
            let candidate = SubbundleSpec::new(sections);
            if candidate.generic_rank(n) == r {
                break candidate;
            }
        };
        out.push(CorpusInstance {
            label: format!("{label}/random-{}", out.len()),
            algebroid: algebroid.clone(),
            subbundle: spec,
        });
    }
    out
}
