use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Face = Vec<usize>;

/// Numeric names sort numerically and before everything else.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Keeps only the inclusion-maximal sets.
pub fn maximalize(mut sets: Vec<Face>) -> Vec<Face> {
    for s in sets.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| is_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Subset test on sorted slices.
pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Immutable simplicial complex stored by its facets.
///
/// Vertex indices are `0..n` assigned in natural order of the names. The
/// complex `{∅}` (no vertices, one empty facet) is representable because it
/// arises as the link of a facet.
#[derive(Clone)]
pub struct SimplicialComplex {
    names: Vec<String>,
    facets: Vec<Face>,
    faces: Vec<OnceLock<Vec<Face>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<Vec<&str>> = self.facets.iter().map(|s| self.face_names(s)).collect();
        f.debug_struct("SimplicialComplex").field("facets", &facets).finish()
    }
}

impl SimplicialComplex {
    /// Builds a complex from facets given by vertex names.
    pub fn new<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::Input("empty facet list".into()));
        }
        if facets.iter().any(|f| f.is_empty()) {
            return Err(Error::Input("empty facet".into()));
        }
        let named: Vec<Vec<String>> =
            facets.iter().map(|f| f.iter().map(|s| s.as_ref().to_string()).collect()).collect();
        Ok(Self::from_names(named))
    }

    /// The complex `{∅}`.
    pub fn void_face() -> Self {
        Self::from_names(vec![Vec::new()])
    }

    fn from_names(facets: Vec<Vec<String>>) -> Self {
        let mut names: Vec<String> = facets.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let idx: Vec<Face> = facets.iter().map(|f| f.iter().map(|s| index[s.as_str()]).collect()).collect();
        let facets = maximalize(idx);
        let d = facets.iter().map(|f| f.len()).max().unwrap_or(0);
        SimplicialComplex { names, facets, faces: (0..=d).map(|_| OnceLock::new()).collect() }
    }

    /// Rebuilds from index facets over `names`, dropping unused vertices.
    pub fn from_indexed(names: &[String], facets: Vec<Face>) -> Self {
        let named = facets.iter().map(|f| f.iter().map(|&v| names[v].clone()).collect()).collect();
        Self::from_names(named)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn face_names(&self, face: &[usize]) -> Vec<&str> {
        face.iter().map(|&v| self.names[v].as_str()).collect()
    }

    pub fn face_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Face> {
        let mut f = names
            .iter()
            .map(|s| self.index_of(s.as_ref()).ok_or_else(|| Error::Input(format!("unknown vertex {:?}", s.as_ref()))))
            .collect::<Result<Face>>()?;
        f.sort_unstable();
        f.dedup();
        Ok(f)
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Number of vertices of the largest facet; this is `d` with `dim = d − 1`.
    pub fn d(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn dim(&self) -> isize {
        self.d() as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.d())
    }

    pub fn is_void_face(&self) -> bool {
        self.names.is_empty()
    }

    /// All faces with `k` vertices, sorted lexicographically.
    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        if k >= self.faces.len() {
            return &[];
        }
        self.faces[k].get_or_init(|| {
            let mut out = BTreeSet::new();
            for f in &self.facets {
                if f.len() < k {
                    continue;
                }
                for c in itertools::Itertools::combinations(f.iter().copied(), k) {
                    out.insert(c);
                }
            }
            out.into_iter().collect()
        })
    }

    /// Faces of dimension `i`; `i = −1` gives the empty face.
    pub fn faces(&self, i: isize) -> Vec<Face> {
        if i < -1 || i > self.dim() {
            return Vec::new();
        }
        self.faces_of_size((i + 1) as usize).to_vec()
    }

    pub fn num_faces(&self, k: usize) -> usize {
        self.faces_of_size(k).len()
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.faces_of_size(face.len()).binary_search_by(|f| f.as_slice().cmp(face)).ok()
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.face_index(face).is_some()
    }

    fn require_face(&self, face: &[usize]) -> Result<()> {
        if self.contains_face(face) {
            Ok(())
        } else {
            Err(Error::Input(format!("{:?} is not a face", self.face_names(face))))
        }
    }

    pub fn link(&self, tau: &[usize]) -> Result<SimplicialComplex> {
        self.require_face(tau)?;
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| is_subset(tau, f))
            .map(|f| f.iter().copied().filter(|v| !tau.contains(v)).collect())
            .collect();
        Ok(Self::from_indexed(&self.names, facets))
    }

    pub fn star(&self, tau: &[usize]) -> Result<SimplicialComplex> {
        self.require_face(tau)?;
        let facets: Vec<Face> = self.facets.iter().filter(|f| is_subset(tau, f)).cloned().collect();
        Ok(Self::from_indexed(&self.names, facets))
    }

    /// Induced subcomplex on the vertices outside `w`.
    pub fn delete_vertices(&self, w: &[usize]) -> SimplicialComplex {
        let facets: Vec<Face> =
            self.facets.iter().map(|f| f.iter().copied().filter(|v| !w.contains(v)).collect()).collect();
        Self::from_indexed(&self.names, facets)
    }

    /// Faces of dimension at most `i`.
    pub fn skeleton(&self, i: isize) -> SimplicialComplex {
        if i >= self.dim() {
            return self.clone();
        }
        let k = (i + 1).max(0) as usize;
        let mut facets: Vec<Face> = self.faces_of_size(k).to_vec();
        facets.extend(self.facets.iter().filter(|f| f.len() < k).cloned());
        Self::from_indexed(&self.names, facets)
    }

    /// Removes `sigma` and every face containing it.
    pub fn remove_face(&self, sigma: &[usize]) -> Result<SimplicialComplex> {
        self.require_face(sigma)?;
        let mut facets = Vec::new();
        for f in &self.facets {
            if is_subset(sigma, f) {
                for &v in sigma {
                    facets.push(f.iter().copied().filter(|&u| u != v).collect());
                }
            } else {
                facets.push(f.clone());
            }
        }
        Ok(Self::from_indexed(&self.names, facets))
    }

    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(clash) = self.names.iter().find(|n| other.names.contains(n)) {
            return Err(Error::Input(format!("join: vertex name {clash:?} occurs in both complexes")));
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                let mut h: Vec<String> = self.face_names(f).into_iter().map(String::from).collect();
                h.extend(other.face_names(g).into_iter().map(String::from));
                facets.push(h);
            }
        }
        Ok(Self::from_names(facets))
    }

    /// Renames vertices; the map must be injective on the vertex set.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<SimplicialComplex> {
        let new: Vec<String> = self.names.iter().map(|s| f(s)).collect();
        if new.iter().collect::<BTreeSet<_>>().len() != new.len() {
            return Err(Error::Input("rename is not injective".into()));
        }
        Ok(Self::from_indexed(&new, self.facets.clone()))
    }

    /// Facet sets as name lists, for serialization and comparisons across
    /// differently indexed complexes.
    pub fn named_facets(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> =
            self.facets.iter().map(|f| self.face_names(f).into_iter().map(String::from).collect()).collect();
        for f in out.iter_mut() {
            f.sort_by(|a, b| natural_cmp(a, b));
        }
        out.sort();
        out
    }

    /// Every face (all sizes) as a set of name sets.
    pub fn named_face_set(&self) -> BTreeSet<BTreeSet<String>> {
        let mut out = BTreeSet::new();
        for k in 0..=self.d() {
            for f in self.faces_of_size(k) {
                out.insert(self.face_names(f).into_iter().map(String::from).collect());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in ["1", "2"] {
            for b in ["3", "4"] {
                for c in ["5", "6"] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(&facets).unwrap()
    }

    #[test]
    fn build_and_maximalize() {
        let t = SimplicialComplex::new(&[vec!["1", "2"], vec!["2", "3"], vec!["1", "3"]]).unwrap();
        assert_eq!((t.num_vertices(), t.dim()), (3, 1));
        let c = SimplicialComplex::new(&[vec!["1", "2", "3"], vec!["1", "2"]]).unwrap();
        assert_eq!(c.facets().len(), 1);
        assert!(SimplicialComplex::new::<&str>(&[]).is_err());
        assert!(SimplicialComplex::new(&[Vec::<&str>::new()]).is_err());
        let n = SimplicialComplex::new(&[vec!["10", "9", "x"]]).unwrap();
        assert_eq!(n.vertex_names(), ["9", "10", "x"]);
    }

    #[test]
    fn faces_of_the_octahedron() {
        let o = octahedron();
        assert_eq!((o.dim(), o.num_vertices()), (2, 6));
        assert_eq!(o.faces(1).len(), 12);
        assert_eq!(o.faces(-1), vec![Vec::<usize>::new()]);
        assert!(o.faces(3).is_empty());
        // brute force: a pair is an edge unless antipodal
        let brute = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).filter(|&(a, b)| b != a + 1 || a % 2 == 1);
        assert_eq!(brute.count(), 12);
    }

    #[test]
    fn link_star_skeleton() {
        let o = octahedron();
        let lk = o.link(&[0]).unwrap();
        assert_eq!((lk.num_vertices(), lk.facets().len(), lk.dim()), (4, 4, 1));
        assert_eq!(o.star(&[]).unwrap(), o);
        assert!(o.link(&[0, 1]).is_err());
        assert_eq!(o.link(&[0, 2, 4]).unwrap(), SimplicialComplex::void_face());
        let b = SimplicialComplex::new(&[vec!["1", "2", "3"], vec!["1", "2", "4"], vec!["1", "3", "4"], vec!["2", "3", "4"]])
            .unwrap();
        let k4 = b.skeleton(1);
        assert_eq!((k4.dim(), k4.facets().len()), (1, 6));
    }

    #[test]
    fn deletion_and_join() {
        let o = octahedron();
        let d = o.delete_vertices(&[0]);
        assert_eq!((d.num_vertices(), d.facets().len()), (5, 4));
        let e1 = SimplicialComplex::new(&[vec!["a"], vec!["b"]]).unwrap();
        let e2 = SimplicialComplex::new(&[vec!["c"], vec!["d"]]).unwrap();
        let sq = e1.join(&e2).unwrap();
        assert_eq!((sq.num_vertices(), sq.facets().len(), sq.dim()), (4, 4, 1));
        assert!(e1.join(&e1).is_err());
    }
}
