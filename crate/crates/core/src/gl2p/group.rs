use super::MatrixGL2;
use crate::group::Group;

/// `GL(2, p)` as a [`Group`] without a Cayley table. Elements are indexed in
/// row-major lexicographic order of their entries; the identity is not 0.
pub struct Gl2Group {
    p: u64,
    mats: Vec<MatrixGL2>,
    /// `lookup[code(m)] = index`, `u32::MAX` for singular matrices.
    lookup: Vec<u32>,
    identity: usize,
}

impl Gl2Group {
    pub fn new(p: u64) -> Self {
        let p4 = (p * p * p * p) as usize;
        let mut lookup = vec![u32::MAX; p4];
        let mut mats = Vec::new();
        for code in 0..p4 {
            let c = code as u64;
            let e = [c / (p * p * p), c / (p * p) % p, c / p % p, c % p];
            if let Ok(m) = MatrixGL2::new(p, e) {
                lookup[code] = mats.len() as u32;
                mats.push(m);
            }
        }
        let mut g = Gl2Group {
            p,
            mats,
            lookup,
            identity: 0,
        };
        g.identity = g.index_of(&MatrixGL2::identity(p));
        g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn matrix(&self, i: usize) -> MatrixGL2 {
        self.mats[i]
    }

    pub fn index_of(&self, m: &MatrixGL2) -> usize {
        let p = self.p;
        let [a, b, c, d] = m.entries();
        self.lookup[(((a * p + b) * p + c) * p + d) as usize] as usize
    }

    pub fn matrices(&self) -> &[MatrixGL2] {
        &self.mats
    }
}

impl Group for Gl2Group {
    fn order(&self) -> usize {
        self.mats.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.mats[a].mul(&self.mats[b]))
    }

    fn inv(&self, a: usize) -> usize {
        self.index_of(&self.mats[a].inv())
    }
}
