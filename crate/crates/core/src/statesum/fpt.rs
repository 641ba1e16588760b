use super::{Prepared, StateSumError};
use crate::abelian::{kernel_mod_orders, subgroup_primary_decomposition, IntegerMatrix, SubgroupPresentation};
use crate::exactnum::{sqrt_natural, sqrt_power, Cyclotomic, QmodZ, Rational};
use crate::gauss::{gauss_sum, GaussSum, PreMetricGroup};
use crate::triangulation::{enumerate_cocycles, z2_cocycle_basis, CocycleZ2, Skeleton, EDGE_VERTICES};
use crate::tycat::{FusionData, TYData};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

/// Shape of the m-coloured edges of one tetrahedron, in model positions
/// a, b, c, d, e, f = 0..6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TetType {
    Empty,
    Triangle,
    /// Four m edges; `pair` holds the two opposite group-labelled positions.
    Flat { pair: [usize; 2] },
    Crooked,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TetCounts {
    pub m_edges: usize,
    pub mm_faces: usize,
    pub empty: usize,
    pub triangle: usize,
    pub flat_pos: usize,
    pub flat_neg: usize,
    pub crooked_pos: usize,
    pub crooked_neg: usize,
}

/// Which constant prefactor to use; `Literal` is kept for comparison only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Constants {
    #[default]
    Derived,
    Literal,
}

/// The cocycle of a coloring: edges coloured m.
pub fn project_phi(theta: &[crate::tycat::Label]) -> CocycleZ2 {
    CocycleZ2(theta.iter().map(|l| l.is_m()).collect())
}

fn tet_type(m: [bool; 6]) -> Option<TetType> {
    let set: Vec<usize> = (0..6).filter(|&i| m[i]).collect();
    match set.len() {
        0 => Some(TetType::Empty),
        3 if matches!(set.as_slice(), [0, 2, 4] | [0, 1, 5] | [1, 2, 3] | [3, 4, 5]) => Some(TetType::Triangle),
        4 => {
            let rest: Vec<usize> = (0..6).filter(|&i| !m[i]).collect();
            match rest.as_slice() {
                [0, 3] | [1, 4] => Some(TetType::Flat { pair: [rest[0], rest[1]] }),
                [2, 5] => Some(TetType::Crooked),
                _ => None,
            }
        }
        _ => None,
    }
}

pub fn classify_tetrahedra(p: &Prepared, alpha: &CocycleZ2) -> Result<(Vec<TetType>, TetCounts), StateSumError> {
    let mut counts = TetCounts { m_edges: alpha.weight(), ..Default::default() };
    counts.mm_faces = p
        .skel
        .face_rep
        .iter()
        .filter(|&&(t, f)| face_slots(f).iter().any(|&k| alpha.get(p.skel.edge_of[t][k])))
        .count();
    let mut types = Vec::with_capacity(p.tri.size());
    for t in 0..p.tri.size() {
        let m = p.model_edges(t).map(|(e, _)| alpha.get(e));
        let ty = tet_type(m).ok_or_else(|| StateSumError::Internal(format!("tetrahedron {t} has m pattern {m:?}")))?;
        let pos = p.orientation.sign(t) > 0;
        match (ty, pos) {
            (TetType::Empty, _) => counts.empty += 1,
            (TetType::Triangle, _) => counts.triangle += 1,
            (TetType::Flat { .. }, true) => counts.flat_pos += 1,
            (TetType::Flat { .. }, false) => counts.flat_neg += 1,
            (TetType::Crooked, true) => counts.crooked_pos += 1,
            (TetType::Crooked, false) => counts.crooked_neg += 1,
        }
        types.push(ty);
    }
    Ok((types, counts))
}

/// Slots of edges ij, jk, ik of face f with vertices i < j < k.
fn face_slots(f: usize) -> [usize; 3] {
    let [i, j, k] = Skeleton::face_vertices(f);
    let slot = |a: usize, b: usize| EDGE_VERTICES.iter().position(|&x| x == (a, b)).unwrap();
    [slot(i, j), slot(j, k), slot(i, k)]
}

/// Linear conditions on the group labels of the non-m edges.
#[derive(Debug, Clone)]
pub struct Constraints {
    /// Edge classes not coloured m, in increasing order.
    pub free_edges: Vec<usize>,
    /// Position of each edge class in `free_edges`.
    pub position: Vec<Option<usize>>,
    pub matrix: IntegerMatrix,
    pub row_orders: Vec<u64>,
    pub col_orders: Vec<u64>,
}

impl Constraints {
    /// Solutions, as a subgroup of the free-edge labelings.
    pub fn kernel(&self) -> SubgroupPresentation {
        if self.col_orders.is_empty() || self.row_orders.is_empty() {
            let d = self.col_orders.len();
            let units: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect();
            return subgroup_primary_decomposition(&self.col_orders, &units);
        }
        kernel_mod_orders(&self.matrix, &self.row_orders, &self.col_orders)
    }
}

pub fn build_constraints(p: &Prepared, cat: &TYData, alpha: &CocycleZ2) -> Constraints {
    let orders = cat.group().orders().to_vec();
    let d = orders.len();
    let free_edges: Vec<usize> = (0..p.skel.num_edges()).filter(|&e| !alpha.get(e)).collect();
    let mut position = vec![None; p.skel.num_edges()];
    for (i, &e) in free_edges.iter().enumerate() {
        position[e] = Some(i);
    }
    let faces: Vec<[(usize, i8); 3]> = p
        .skel
        .face_rep
        .iter()
        .filter_map(|&(t, f)| {
            let edges = face_slots(f).map(|k| (p.skel.edge_of[t][k], p.skel.edge_sign[t][k]));
            edges.iter().all(|&(e, _)| !alpha.get(e)).then_some(edges)
        })
        .collect();
    let mut matrix = IntegerMatrix::zeros(faces.len() * d, free_edges.len() * d);
    for (fi, [(x, sx), (y, sy), (z, sz)]) in faces.iter().enumerate() {
        // theta(ij) + theta(jk) - theta(ik) = 0
        for (e, c) in [(*x, *sx as i64), (*y, *sy as i64), (*z, -(*sz as i64))] {
            let col = position[e].unwrap();
            for r in 0..d {
                let (i, j) = (fi * d + r, col * d + r);
                let v = matrix.get(i, j) + BigInt::from(c);
                matrix.set(i, j, v);
            }
        }
    }
    Constraints {
        row_orders: orders.iter().copied().cycle().take(faces.len() * d).collect(),
        col_orders: orders.iter().copied().cycle().take(free_edges.len() * d).collect(),
        free_edges,
        position,
        matrix,
    }
}

/// One factor chi(s_x y_x, s_y y_y)^coeff of the phase of a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pair {
    pub x: usize,
    pub sx: i8,
    pub y: usize,
    pub sy: i8,
    pub coeff: i8,
}

#[derive(Debug, Clone, Default)]
pub struct PairSystem {
    pub pairs: Vec<Pair>,
}

/// Flat tetrahedra of positive orientation and crooked ones of negative
/// orientation contribute chi; the other two kinds contribute its conjugate.
pub fn build_pair_system(p: &Prepared, cons: &Constraints, types: &[TetType]) -> PairSystem {
    let mut pairs = Vec::new();
    for (t, ty) in types.iter().enumerate() {
        let ([i, j], flat) = match *ty {
            TetType::Flat { pair } => (pair, true),
            TetType::Crooked => ([2, 5], false),
            _ => continue,
        };
        let edges = p.model_edges(t);
        let pos = p.orientation.sign(t) > 0;
        pairs.push(Pair {
            x: cons.position[edges[i].0].unwrap(),
            sx: edges[i].1,
            y: cons.position[edges[j].0].unwrap(),
            sy: edges[j].1,
            coeff: if flat == pos { 1 } else { -1 },
        });
    }
    PairSystem { pairs }
}

/// The quadratic function y -> sum coeff * b(s_x y_x, s_y y_y) on the kernel,
/// in the kernel's own cyclic coordinates.
pub fn assemble_form(cat: &TYData, kernel: &SubgroupPresentation, pairs: &PairSystem) -> Result<PreMetricGroup, StateSumError> {
    let group = cat.group();
    let d = group.rank();
    let e = group.exponent() as i128;
    // integer bicharacter matrix: b(u, w) = u^T B w / e
    let bmat: Vec<Vec<i128>> = cat
        .bicharacter()
        .gram()
        .iter()
        .map(|row| row.iter().map(|v| v.numer_u64() as i128 * (e / v.denom_u64() as i128)).collect())
        .collect();
    let k = kernel.generators.len();
    let slice = |g: usize, edge: usize| -> &[u64] { &kernel.generators[g][edge * d..edge * d + d] };
    let form = |u: &[u64], w: &[u64]| -> i128 {
        let mut acc = 0i128;
        for r in 0..d {
            for s in 0..d {
                acc = (acc + u[r] as i128 * w[s] as i128 % e * bmat[r][s]) % e;
            }
        }
        acc
    };
    let mut q = vec![0i128; k];
    let mut gram = vec![vec![0i128; k]; k];
    for pr in &pairs.pairs {
        let c = (pr.coeff * pr.sx * pr.sy) as i128;
        for a in 0..k {
            let ua = slice(a, pr.x);
            for b in a..k {
                let ub = slice(b, pr.x);
                let v = form(ua, slice(b, pr.y)) + form(ub, slice(a, pr.y));
                gram[a][b] = (gram[a][b] + c * v) % e;
            }
            q[a] = (q[a] + c * form(ua, slice(a, pr.y))) % e;
        }
    }
    let to_q = |v: i128| QmodZ::new(v.rem_euclid(e) as i64, e as i64);
    let gram: Vec<Vec<QmodZ>> = (0..k).map(|a| (0..k).map(|b| to_q(gram[a.min(b)][a.max(b)])).collect()).collect();
    let q = q.into_iter().map(to_q).collect();
    PreMetricGroup::new(kernel.cyclic_orders.clone(), q, gram).map_err(|err| StateSumError::Internal(format!("assembled form: {err}")))
}

/// The contribution of colorings with a fixed mod-2 shadow.
#[derive(Debug, Clone)]
pub struct PartialSum {
    pub cocycle: CocycleZ2,
    pub value: Cyclotomic,
    pub counts: TetCounts,
    pub kernel_order: BigUint,
    pub gauss: GaussSum,
}

pub fn partial_state_sum(p: &Prepared, cat: &TYData, alpha: &CocycleZ2, constants: Constants) -> Result<PartialSum, StateSumError> {
    let order = cat.order();
    let (types, counts) = classify_tetrahedra(p, alpha)?;
    let cons = build_constraints(p, cat, alpha);
    let kernel = cons.kernel();
    let pairs = build_pair_system(p, &cons, &types);
    let form = assemble_form(cat, &kernel, &pairs)?;
    let gauss = gauss_sum(&form);
    let kernel_order = kernel.order();
    let base = counts.m_edges as i64 - counts.mm_faces as i64;
    let crooked = (counts.crooked_pos + counts.crooked_neg) as i64;
    let flat = (counts.flat_pos + counts.flat_neg) as i64;
    // each m-triangle carries d_m, each flat d_m, each crooked nu d_m^2
    let (dm_exp, nu_exp) = match constants {
        Constants::Derived => (base + counts.triangle as i64 + flat + 2 * crooked, crooked),
        Constants::Literal => (base + flat + 2 * crooked, counts.crooked_pos as i64 - counts.crooked_neg as i64),
    };
    let theta = gauss.theta(order)?;
    let value = if theta.is_zero() {
        Cyclotomic::zero(order)
    } else {
        // t_m on each m-edge, mm-face, m-triangle and flat quad
        let pivotal = (counts.m_edges + counts.mm_faces + counts.triangle) as i64 + flat;
        let sign = if cat.nu_sign() < 0 && (nu_exp + pivotal).rem_euclid(2) == 1 { -1 } else { 1 };
        let dv = Rational::new(BigInt::from(sign), BigInt::from(cat.global_dim()).pow(p.skel.num_vertices as u32));
        let scal = &sqrt_power(cat.group_size() as u64, dm_exp - nu_exp, order)? * &sqrt_natural(&kernel_order, order)?;
        (&scal * &theta).scale(&dv)
    };
    Ok(PartialSum { cocycle: alpha.clone(), value, counts, kernel_order, gauss })
}

#[derive(Debug, Clone, Copy)]
pub struct InvariantOptions {
    pub max_cocycles: u64,
    pub constants: Constants,
}

impl Default for InvariantOptions {
    fn default() -> Self {
        InvariantOptions { max_cocycles: 1 << 30, constants: Constants::Derived }
    }
}

#[derive(Debug, Clone)]
pub struct InvariantResult {
    pub total: Cyclotomic,
    pub per_cocycle: Vec<PartialSum>,
    pub betti1: usize,
}

/// Sum of the partial sums over every mod-2 cocycle, evaluated in parallel.
/// Cocycles appear in Gray-code order starting from zero.
pub fn invariant(p: &Prepared, cat: &TYData, opts: InvariantOptions) -> Result<InvariantResult, StateSumError> {
    let basis = z2_cocycle_basis(&p.skel);
    let cocycles = enumerate_cocycles(&basis, p.skel.num_edges(), opts.max_cocycles)?;
    let per_cocycle = cocycles
        .par_iter()
        .map(|alpha| partial_state_sum(p, cat, alpha, opts.constants))
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = Cyclotomic::zero(cat.order());
    for s in &per_cocycle {
        total += &s.value;
    }
    Ok(InvariantResult { total, per_cocycle, betti1: basis.betti1 })
}
