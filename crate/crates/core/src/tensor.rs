//! Binary trees (the free magma on one generator), the truncated
//! non-associative tensor algebra over a module, its universal morphism onto
//! an algebra, and the ideals generated by the pre-Lie and Lie-admissible
//! relations.
//!
//! Tensor-power coordinates are mixed-radix integers in the base dimension
//! with the leftmost tensor factor most significant.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::coefficients::{CoeffDomain, Scalar};
use crate::error::{Error, Result};
use crate::linear::{require_field, Echelon, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Shape {
    Leaf,
    Node(Box<MagmaTree>, Box<MagmaTree>),
}

/// A fully parenthesised monomial in one letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MagmaTree {
    degree: usize,
    shape: Shape,
}

impl MagmaTree {
    pub fn leaf() -> Self {
        MagmaTree { degree: 1, shape: Shape::Leaf }
    }

    /// `(s)(t)`.
    pub fn node(s: MagmaTree, t: MagmaTree) -> Self {
        MagmaTree { degree: s.degree + t.degree, shape: Shape::Node(Box::new(s), Box::new(t)) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.shape, Shape::Leaf)
    }

    pub fn children(&self) -> Option<(&MagmaTree, &MagmaTree)> {
        match &self.shape {
            Shape::Leaf => None,
            Shape::Node(l, r) => Some((l, r)),
        }
    }
}

pub fn tree_product(s: &MagmaTree, t: &MagmaTree) -> MagmaTree {
    MagmaTree::node(s.clone(), t.clone())
}

impl Ord for MagmaTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| match (&self.shape, &other.shape) {
            (Shape::Leaf, Shape::Leaf) => Ordering::Equal,
            (Shape::Leaf, Shape::Node(..)) => Ordering::Less,
            (Shape::Node(..), Shape::Leaf) => Ordering::Greater,
            (Shape::Node(a, b), Shape::Node(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
        })
    }
}

impl PartialOrd for MagmaTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MagmaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Leaf => f.write_str("x"),
            Shape::Node(l, r) => {
                for child in [l, r] {
                    if child.is_leaf() {
                        write!(f, "{child}")?;
                    } else {
                        write!(f, "({child})")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for MagmaTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All trees of degree `1..=max_degree`; entry `d - 1` holds the trees of
/// degree `d` in canonical order.
pub fn enumerate_trees(max_degree: usize) -> Vec<Vec<MagmaTree>> {
    let mut by_degree: Vec<Vec<MagmaTree>> = Vec::with_capacity(max_degree);
    for d in 1..=max_degree {
        if d == 1 {
            by_degree.push(vec![MagmaTree::leaf()]);
            continue;
        }
        let mut trees = Vec::new();
        for left in 1..d {
            for l in &by_degree[left - 1] {
                for r in &by_degree[d - left - 1] {
                    trees.push(tree_product(l, r));
                }
            }
        }
        by_degree.push(trees);
    }
    by_degree
}

/// `a ⊗ b` in mixed-radix coordinates.
fn kron(a: &Vector, b: &Vector) -> Vector {
    let mut coords = Vec::with_capacity(a.len() * b.len());
    for x in a.coords() {
        for y in b.coords() {
            coords.push(x * y);
        }
    }
    Vector::new(a.domain(), coords).expect("homogeneous")
}

/// Coordinates of `e_{i1} ⊗ … ⊗ e_{id}`.
pub fn pure_tensor(domain: CoeffDomain, base_dim: usize, indices: &[usize]) -> Vector {
    let len = base_dim.pow(indices.len() as u32);
    let pos = indices.iter().fold(0, |acc, &i| acc * base_dim + i);
    Vector::unit(domain, len, pos)
}

/// An element of `T_na(R)` truncated at degree `max_degree`; trees absent
/// from the map carry zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    domain: CoeffDomain,
    base_dim: usize,
    max_degree: usize,
    components: BTreeMap<MagmaTree, Vector>,
}

impl GradedElement {
    pub fn zero(domain: CoeffDomain, base_dim: usize, max_degree: usize) -> Self {
        GradedElement { domain, base_dim, max_degree, components: BTreeMap::new() }
    }

    /// `v` placed in the component of `tree`.
    pub fn homogeneous(tree: MagmaTree, v: Vector, base_dim: usize, max_degree: usize) -> Result<Self> {
        let mut out = GradedElement::zero(v.domain(), base_dim, max_degree);
        out.add_component(tree, &v)?;
        Ok(out)
    }

    /// Degree-one element.
    pub fn leaf(v: Vector, max_degree: usize) -> Self {
        let n = v.len();
        GradedElement::homogeneous(MagmaTree::leaf(), v, n, max_degree).expect("degree one fits")
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn component(&self, tree: &MagmaTree) -> Option<&Vector> {
        self.components.get(tree)
    }

    pub fn components(&self) -> impl Iterator<Item = (&MagmaTree, &Vector)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Adds `v` to the component of `tree`.
    pub fn add_component(&mut self, tree: MagmaTree, v: &Vector) -> Result<()> {
        if tree.degree() > self.max_degree {
            return Err(Error::ShapeMismatch(format!("tree {tree} exceeds truncation degree {}", self.max_degree)));
        }
        let len = self.base_dim.pow(tree.degree() as u32);
        if v.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: v.len() });
        }
        if v.domain() != self.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: v.domain() });
        }
        let sum = match self.components.remove(&tree) {
            Some(old) => &old + v,
            None => v.clone(),
        };
        if !sum.is_zero() {
            self.components.insert(tree, sum);
        }
        Ok(())
    }

    fn check_base(&self, other: &GradedElement) -> Result<()> {
        if self.base_dim != other.base_dim || self.max_degree != other.max_degree || self.domain != other.domain {
            return Err(Error::BaseMismatch(format!(
                "(dim {}, degree {}, {}) vs (dim {}, degree {}, {})",
                self.base_dim, self.max_degree, self.domain, other.base_dim, other.max_degree, other.domain
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_base(other)?;
        let mut out = self.clone();
        for (t, v) in &other.components {
            out.add_component(t.clone(), v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> GradedElement {
        let components = self.components.iter().map(|(t, v)| (t.clone(), v.scale(s))).filter(|(_, v)| !v.is_zero()).collect();
        GradedElement { components, ..self.clone() }
    }

    pub fn neg(&self) -> GradedElement {
        self.scale(&-self.domain.one())
    }

    pub fn sub(&self, other: &GradedElement) -> Result<GradedElement> {
        self.add(&other.neg())
    }
}

/// Product in the truncated algebra: component pairs whose degrees sum past
/// the truncation are dropped.
pub fn graded_mul(u: &GradedElement, v: &GradedElement) -> Result<GradedElement> {
    u.check_base(v)?;
    let mut out = GradedElement::zero(u.domain, u.base_dim, u.max_degree);
    for (s, x) in &u.components {
        for (t, y) in &v.components {
            if s.degree() + t.degree() <= u.max_degree {
                out.add_component(tree_product(s, t), &kron(x, y))?;
            }
        }
    }
    Ok(out)
}

/// The algebra morphism `T_na(A) -> A` extending the identity of `A`.
///
/// For each tree the map `A^{⊗d} -> A` is tabulated on pure basis tensors.
#[derive(Debug, Clone)]
pub struct UniversalMorphism {
    algebra: Algebra,
    tables: BTreeMap<MagmaTree, Vec<Vector>>,
}

impl UniversalMorphism {
    pub fn new(a: &Algebra) -> Self {
        UniversalMorphism { algebra: a.clone(), tables: BTreeMap::new() }
    }

    fn table(&mut self, tree: &MagmaTree) -> &[Vector] {
        if !self.tables.contains_key(tree) {
            let a = &self.algebra;
            let cols = match tree.children() {
                None => (0..a.dim()).map(|i| a.basis_vector(i)).collect(),
                Some((l, r)) => {
                    let left = self.table(l).to_vec();
                    let right = self.table(r).to_vec();
                    let a = &self.algebra;
                    let mut cols = Vec::with_capacity(left.len() * right.len());
                    for x in &left {
                        for y in &right {
                            cols.push(a.mul_unchecked(x, y));
                        }
                    }
                    cols
                }
            };
            self.tables.insert(tree.clone(), cols);
        }
        &self.tables[tree]
    }

    pub fn eval(&mut self, u: &GradedElement) -> Result<Vector> {
        if u.base_dim != self.algebra.dim() || u.domain != self.algebra.domain() {
            return Err(Error::BaseMismatch(format!("element over dim {} cannot be evaluated in an algebra of dim {}", u.base_dim, self.algebra.dim())));
        }
        let mut out = self.algebra.zero_vector();
        for (tree, coords) in &u.components {
            let table = self.table(tree).to_vec();
            for (c, col) in coords.coords().iter().zip(&table) {
                if !c.is_zero() {
                    out.add_scaled(c, col);
                }
            }
        }
        Ok(out)
    }
}

pub fn universal_morphism_eval(a: &Algebra, u: &GradedElement) -> Result<Vector> {
    UniversalMorphism::new(a).eval(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    PreLie,
    LieAdmissible,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::PreLie => "prelie",
            GeneratorKind::LieAdmissible => "lieadm",
        }
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prelie" => Ok(GeneratorKind::PreLie),
            "lieadm" => Ok(GeneratorKind::LieAdmissible),
            _ => Err(Error::Parse(format!("unknown generator kind {s:?} (expected prelie or lieadm)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub kind: GeneratorKind,
    /// Basis indices each generator was instantiated at.
    pub tuples: Vec<Vec<usize>>,
    pub generators: Vec<GradedElement>,
}

/// The relation family at every basis pair and triple:
/// `x⊗y − y⊗x − [x,y]`, and in degree three either
/// `(x⊗y)⊗z − (y⊗x)⊗z − x⊗(y⊗z) + y⊗(x⊗z)` (pre-Lie) or the cyclic sum of
/// associators minus the anticyclic sum (Lie-admissible).
pub fn theorem_generators(a: &Algebra, kind: GeneratorKind, max_degree: usize) -> Result<GeneratorSet> {
    if max_degree < 3 {
        return Err(Error::ShapeMismatch(format!("truncation degree {max_degree} is below the generator degree 3")));
    }
    let n = a.dim();
    let d = a.domain();
    let leaf = MagmaTree::leaf();
    let xx = tree_product(&leaf, &leaf);
    let left_comb = tree_product(&xx, &leaf);
    let right_comb = tree_product(&leaf, &xx);
    let pure = |idx: &[usize]| pure_tensor(d, n, idx);
    let mut tuples = Vec::new();
    let mut generators = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut g = GradedElement::zero(d, n, max_degree);
            g.add_component(xx.clone(), &(&pure(&[i, j]) - &pure(&[j, i])))?;
            g.add_component(leaf.clone(), &-&a.bracket(&a.basis_vector(i), &a.basis_vector(j)))?;
            tuples.push(vec![i, j]);
            generators.push(g);
        }
    }
    // associator (x,y,z) = (x⊗y)⊗z − x⊗(y⊗z) with coefficient `sign`
    let add_assoc = |g: &mut GradedElement, idx: [usize; 3], sign: i64| -> Result<()> {
        let s = d.from_i64(sign);
        g.add_component(left_comb.clone(), &pure(&idx).scale(&s))?;
        g.add_component(right_comb.clone(), &pure(&idx).scale(&-&s))
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut g = GradedElement::zero(d, n, max_degree);
                match kind {
                    GeneratorKind::PreLie => {
                        add_assoc(&mut g, [i, j, k], 1)?;
                        add_assoc(&mut g, [j, i, k], -1)?;
                    }
                    GeneratorKind::LieAdmissible => {
                        for idx in [[i, j, k], [j, k, i], [k, i, j]] {
                            add_assoc(&mut g, idx, 1)?;
                        }
                        for idx in [[j, i, k], [i, k, j], [k, j, i]] {
                            add_assoc(&mut g, idx, -1)?;
                        }
                    }
                }
                tuples.push(vec![i, j, k]);
                generators.push(g);
            }
        }
    }
    Ok(GeneratorSet { kind, tuples, generators })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub kind: GeneratorKind,
    pub generators: usize,
    pub all_in_kernel: bool,
    /// First generator (by basis tuple) with nonzero image, and that image.
    pub first_outside: Option<(Vec<usize>, Vector)>,
    /// The identity the generators encode, checked directly.
    pub identity_holds: bool,
    pub agree: bool,
}

pub fn generators_in_kernel_check(a: &Algebra, kind: GeneratorKind) -> KernelReport {
    let gens = theorem_generators(a, kind, 3).expect("degree 3 truncation");
    let mut phi = UniversalMorphism::new(a);
    let mut first_outside = None;
    for (t, g) in gens.tuples.iter().zip(&gens.generators) {
        let img = phi.eval(g).expect("same base");
        if !img.is_zero() {
            first_outside = Some((t.clone(), img));
            break;
        }
    }
    let identity_holds = match kind {
        GeneratorKind::PreLie => crate::identities::is_pre_lie(a).holds,
        GeneratorKind::LieAdmissible => crate::identities::is_lie_admissible(a).holds,
    };
    let all_in_kernel = first_outside.is_none();
    KernelReport { kind, generators: gens.generators.len(), all_in_kernel, first_outside, identity_holds, agree: all_in_kernel == identity_holds }
}

/// Flattened coordinates of the truncated algebra, highest degree first and
/// canonical tree order within a degree.
struct Layout {
    base_dim: usize,
    blocks: Vec<(MagmaTree, usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(base_dim: usize, max_degree: usize) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for trees in enumerate_trees(max_degree).into_iter().rev() {
            for t in trees {
                let len = base_dim.pow(t.degree() as u32);
                blocks.push((t, offset, len));
                offset += len;
            }
        }
        Layout { base_dim, blocks, total: offset }
    }

    fn flatten(&self, u: &GradedElement) -> Vector {
        let mut coords = vec![u.domain.zero(); self.total];
        for (t, off, _) in &self.blocks {
            if let Some(v) = u.component(t) {
                for (k, c) in v.coords().iter().enumerate() {
                    coords[off + k] = c.clone();
                }
            }
        }
        Vector::new(u.domain, coords).expect("homogeneous")
    }

    fn unflatten(&self, v: &Vector, max_degree: usize) -> GradedElement {
        let mut out = GradedElement::zero(v.domain(), self.base_dim, max_degree);
        for (t, off, len) in &self.blocks {
            let part = v.slice(*off, off + len);
            if !part.is_zero() {
                out.components.insert(t.clone(), part);
            }
        }
        out
    }

    /// Degree of the block holding coordinate `pos`.
    fn block_of(&self, pos: usize) -> usize {
        self.blocks.partition_point(|(_, off, len)| off + len <= pos)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDimension {
    pub tree: MagmaTree,
    pub dim: usize,
    pub ambient: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDimension {
    pub degree: usize,
    /// `dim (J ∩ T_{≤d}) − dim (J ∩ T_{≤d−1})`.
    pub dim: usize,
    pub ambient: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureTable {
    pub kind: GeneratorKind,
    pub max_degree: usize,
    pub total_dim: usize,
    pub ambient_dim: usize,
    pub per_degree: Vec<DegreeDimension>,
    /// Rank of the leading parts of each degree projected onto each tree.
    pub per_tree: Vec<TreeDimension>,
    /// The computed ideal meets the degree-one component trivially.
    pub degree_one_trivial: bool,
}

/// Span of the generators closed under multiplication by basis elements on
/// both sides, inside the truncation.
///
/// An element whose highest-degree component has degree `m` is only
/// multiplied by elements of degree at most `D − m`, so nothing is ever
/// truncated and every vector found lies in the ideal of the full algebra.
pub fn graded_ideal_closure(gens: &GeneratorSet, max_degree: usize, budget: u64) -> Result<ClosureTable> {
    let first = gens.generators.first().ok_or_else(|| Error::ShapeMismatch("empty generator set".into()))?;
    let (domain, n) = (first.domain(), first.base_dim());
    require_field(domain)?;
    let layout = Layout::new(n, max_degree);
    if layout.total as u128 > budget as u128 {
        return Err(Error::BudgetExceeded { needed: layout.total as u128, budget });
    }
    let trees = enumerate_trees(max_degree);
    // basis elements grouped by degree
    let basis: Vec<Vec<GradedElement>> = trees
        .iter()
        .map(|ts| {
            ts.iter()
                .flat_map(|t| {
                    let len = n.pow(t.degree() as u32);
                    (0..len).map(move |k| GradedElement::homogeneous(t.clone(), Vector::unit(domain, len, k), n, max_degree).expect("fits"))
                })
                .collect()
        })
        .collect();

    let mut ech = Echelon::new(domain, layout.total)?;
    let mut queue: Vec<Vector> = Vec::new();
    for g in &gens.generators {
        let g = GradedElement { max_degree, ..g.clone() };
        if let Some(row) = ech.insert_row(&layout.flatten(&g)) {
            queue.push(row);
        }
    }
    while let Some(row) = queue.pop() {
        let lead = row.coords().iter().position(|c| !c.is_zero()).expect("nonzero row");
        let m = layout.blocks[layout.block_of(lead)].0.degree();
        let elem = layout.unflatten(&row, max_degree);
        for group in basis.iter().take(max_degree - m) {
            for b in group {
                for prod in [graded_mul(&elem, b)?, graded_mul(b, &elem)?] {
                    if let Some(r) = ech.insert_row(&layout.flatten(&prod)) {
                        queue.push(r);
                    }
                }
            }
        }
    }

    let rows = ech.rows().to_vec();
    let pivots = ech.pivots().to_vec();
    let lead_degree = |k: usize| layout.blocks[layout.block_of(pivots[k])].0.degree();
    let mut per_degree = Vec::new();
    let mut per_tree = Vec::new();
    for d in 1..=max_degree {
        let leading: Vec<&Vector> = (0..rows.len()).filter(|&k| lead_degree(k) == d).map(|k| &rows[k]).collect();
        let ambient = trees[d - 1].len() * n.pow(d as u32);
        per_degree.push(DegreeDimension { degree: d, dim: leading.len(), ambient });
        for (t, off, len) in layout.blocks.iter().filter(|(t, _, _)| t.degree() == d) {
            let proj: Vec<Vec<Scalar>> = leading.iter().map(|r| r.coords()[*off..off + len].to_vec()).collect();
            let dim = if proj.is_empty() { 0 } else { Matrix::from_rows(domain, proj, *len)?.rank()? };
            per_tree.push(TreeDimension { tree: t.clone(), dim, ambient: *len });
        }
    }
    per_tree.sort_by(|a, b| a.tree.cmp(&b.tree));
    let degree_one_trivial = per_degree[0].dim == 0;
    Ok(ClosureTable { kind: gens.kind, max_degree, total_dim: rows.len(), ambient_dim: layout.total, per_degree, per_tree, degree_one_trivial })
}
