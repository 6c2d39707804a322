use super::sigma::{defined_classes, SigmaNFunctor};
use super::VecFunctor;
use crate::elcat::{Morphism, ObjId};
use crate::gf::{FieldPrime, Matrix};
use crate::modrep::symmetric_group;

/// Components of a natural transformation, one per object id (empty
/// matrices outside the window).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<Matrix>,
}

impl NatTrans {
    pub fn component(&self, o: ObjId) -> &Matrix {
        &self.components[o]
    }

    pub fn compose(&self, first: &NatTrans) -> NatTrans {
        NatTrans {
            components: self.components.iter().zip(&first.components).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn is_iso_on(&self, objs: &[ObjId]) -> bool {
        objs.iter().all(|&o| self.components[o].inverse().is_some())
    }
}

/// Components of a natural transformation between functors on Rector's
/// category, one per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaNatTrans {
    pub components: Vec<Matrix>,
}

/// Returns the first generator on whose square `eta` fails to commute.
pub fn is_natural(f: &dyn VecFunctor, g: &dyn VecFunctor, eta: &NatTrans) -> Option<Morphism> {
    let cat = f.category();
    let w = f.window().meet(g.window());
    cat.generators(w)
        .iter()
        .find(|m| g.act(m).mul(&eta.components[m.src]) != eta.components[m.dst].mul(&f.act(m)))
        .cloned()
}

struct Block {
    offset: usize,
    rows: usize,
    cols: usize,
}

/// `left X_a = X_b right`.
struct Constraint {
    a: usize,
    b: usize,
    left: Matrix,
    right: Matrix,
}

/// Solutions of a family of constraints on block unknowns, each block a
/// row-major matrix. Constraints are imposed one at a time on the running
/// solution basis.
fn solve(field: FieldPrime, blocks: &[Block], constraints: impl Iterator<Item = Constraint>) -> Vec<Vec<u8>> {
    let total: usize = blocks.iter().map(|b| b.rows * b.cols).sum();
    let mut basis = Matrix::identity(field, total);
    for c in constraints {
        if basis.cols() == 0 {
            break;
        }
        let (ba, bb) = (&blocks[c.a], &blocks[c.b]);
        let eqs = bb.rows * ba.cols;
        if eqs == 0 {
            continue;
        }
        let ka = basis.submatrix(ba.offset..ba.offset + ba.rows * ba.cols, 0..basis.cols());
        let kb = basis.submatrix(bb.offset..bb.offset + bb.rows * bb.cols, 0..basis.cols());
        // vec(L X) = (L ⊗ I) vec X and vec(X R) = (I ⊗ R^T) vec X, row-major
        let lhs = c.left.kron(&Matrix::identity(field, ba.cols)).mul(&ka);
        let rhs = Matrix::identity(field, bb.rows).kron(&c.right.transpose()).mul(&kb);
        let residual = lhs.sub(&rhs);
        if residual.is_zero() {
            continue;
        }
        let ker = residual.kernel();
        basis = basis.mul(&ker.basis().transpose());
    }
    (0..basis.cols()).map(|j| basis.column(j)).collect()
}

fn unpack(field: FieldPrime, v: &[u8], b: &Block) -> Matrix {
    let mut m = Matrix::zeros(field, b.rows, b.cols);
    for i in 0..b.rows {
        for j in 0..b.cols {
            m.set(i, j, v[b.offset + i * b.cols + j]);
        }
    }
    m
}

/// A basis of the natural transformations `F -> G` on the common window,
/// as the solution space of the naturality squares over all generators.
pub fn hom_space(f: &dyn VecFunctor, g: &dyn VecFunctor) -> Vec<NatTrans> {
    let cat = f.category();
    let field = cat.field();
    let w = f.window().meet(g.window());
    let n = cat.objects().len();
    let mut blocks = Vec::with_capacity(n);
    let mut offset = 0;
    for o in 0..n {
        let (rows, cols) = if cat.in_window(o, w) { (g.dim_at(o), f.dim_at(o)) } else { (0, 0) };
        blocks.push(Block { offset, rows, cols });
        offset += rows * cols;
    }
    let gens = cat.generators(w);
    let constraints = gens.iter().filter_map(|m| {
        let (ba, bb) = (&blocks[m.src], &blocks[m.dst]);
        if (ba.rows * ba.cols == 0 && bb.rows * bb.cols == 0) || bb.rows * ba.cols == 0 {
            return None;
        }
        Some(Constraint {
            a: m.src,
            b: m.dst,
            left: g.act(m),
            right: f.act(m),
        })
    });
    solve(field, &blocks, constraints)
        .into_iter()
        .map(|v| NatTrans {
            components: blocks.iter().map(|b| unpack(field, &v, b)).collect(),
        })
        .collect()
}

/// A basis of the `S_n`-equivariant natural transformations `M -> N` on
/// Rector's category.
pub fn hom_space_sigma(m: &dyn SigmaNFunctor, n: &dyn SigmaNFunctor) -> Vec<SigmaNatTrans> {
    let cat = m.category();
    let field = cat.field();
    let sk = cat.skeleton();
    let classes: Vec<usize> = defined_classes(m).into_iter().filter(|c| defined_classes(n).contains(c)).collect();
    let mut blocks = Vec::with_capacity(sk.len());
    let mut offset = 0;
    for c in 0..sk.len() {
        let (rows, cols) = if classes.contains(&c) { (n.dim_at(c), m.dim_at(c)) } else { (0, 0) };
        blocks.push(Block { offset, rows, cols });
        offset += rows * cols;
    }
    let sym = symmetric_group(m.n());
    let mut constraints = Vec::new();
    for &c in &classes {
        let class = sk.class(c);
        for &a in class.group.generators() {
            let f = &class.aut[a];
            constraints.push(Constraint {
                a: c,
                b: c,
                left: n.act_r(c, c, f),
                right: m.act_r(c, c, f),
            });
        }
        for i in 0..sym.group().generators().len() {
            constraints.push(Constraint {
                a: c,
                b: c,
                left: n.sigma(c, i),
                right: m.sigma(c, i),
            });
        }
        for &c2 in &classes {
            if c2 == c {
                continue;
            }
            for f in sk.hom_r(c, c2) {
                constraints.push(Constraint {
                    a: c,
                    b: c2,
                    left: n.act_r(c, c2, f),
                    right: m.act_r(c, c2, f),
                });
            }
        }
    }
    solve(field, &blocks, constraints.into_iter())
        .into_iter()
        .map(|v| SigmaNatTrans {
            components: blocks.iter().map(|b| unpack(field, &v, b)).collect(),
        })
        .collect()
}

/// Checks that `eta: M -> N` commutes with the `Aut`, `S_n` and Rector
/// actions on the common classes; returns a description of the first failure.
pub fn is_natural_sigma(m: &dyn SigmaNFunctor, n: &dyn SigmaNFunctor, eta: &SigmaNatTrans) -> Option<String> {
    let sk = m.category().skeleton();
    let classes: Vec<usize> = defined_classes(m).into_iter().filter(|c| defined_classes(n).contains(c)).collect();
    let sym = symmetric_group(m.n());
    for &c in &classes {
        let e = &eta.components[c];
        for i in 0..sym.group().generators().len() {
            if n.sigma(c, i).mul(e) != e.mul(&m.sigma(c, i)) {
                return Some(format!("transposition {i} at class {c}"));
            }
        }
        for &c2 in &classes {
            for f in sk.hom_r(c, c2) {
                if n.act_r(c, c2, f).mul(e) != eta.components[c2].mul(&m.act_r(c, c2, f)) {
                    return Some(format!("Rector map {} from class {c} to {c2}", f.key()));
                }
            }
        }
    }
    None
}
