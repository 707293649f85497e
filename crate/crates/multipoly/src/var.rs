use std::fmt;

/// Variable families, in the order they sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Symmetric-matrix entry T^{(l)}_{ij}, i <= j.
    T,
    /// Entry of an auxiliary symmetric matrix Q^{(l)}.
    Q,
    /// Plücker-type coordinate y_{i,j}.
    Y,
    U,
    V,
    /// δ-variable z_i^{(l)}.
    Z,
    /// Frobenius coordinate z_i^{φ^l}.
    ZPhi,
    /// Free-standing scalar indeterminate x_i^{(l)}; also used for entries of
    /// non-symmetric generic matrices (i = matrix index, level = slot).
    Aux,
}

/// A variable: family tag, level and a pair of indices.
///
/// Ordering is (family, level, i, j) so serialized output is stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub level: u16,
    pub i: u16,
    pub j: u16,
}

impl VarId {
    /// T^{(l)}_{ij} with 1-based indices; (j, i) aliases (i, j).
    pub fn t(level: u16, i: u16, j: u16) -> VarId {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        VarId {
            family: Family::T,
            level,
            i,
            j,
        }
    }

    pub fn q(level: u16, i: u16, j: u16) -> VarId {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        VarId {
            family: Family::Q,
            level,
            i,
            j,
        }
    }

    pub fn u(level: u16) -> VarId {
        VarId {
            family: Family::U,
            level,
            i: 0,
            j: 0,
        }
    }

    pub fn v(level: u16) -> VarId {
        VarId {
            family: Family::V,
            level,
            i: 0,
            j: 0,
        }
    }

    /// y_{i,j}, stored as written (no symmetry: y_{j,i} = -y_{i,j} is the
    /// caller's business).
    pub fn y(i: u16, j: u16) -> VarId {
        VarId {
            family: Family::Y,
            level: 0,
            i,
            j,
        }
    }

    /// z_i^{(level)}.
    pub fn z(i: u16, level: u16) -> VarId {
        VarId {
            family: Family::Z,
            level,
            i,
            j: 0,
        }
    }

    /// z_i^{φ^k}.
    pub fn zphi(i: u16, k: u16) -> VarId {
        VarId {
            family: Family::ZPhi,
            level: k,
            i,
            j: 0,
        }
    }

    pub fn aux(i: u16, level: u16) -> VarId {
        VarId {
            family: Family::Aux,
            level,
            i,
            j: 0,
        }
    }

    /// Generic (non-symmetric) matrix entry, slot `slot`, position (i, j).
    pub fn entry(slot: u16, i: u16, j: u16) -> VarId {
        VarId {
            family: Family::Aux,
            level: slot,
            i,
            j,
        }
    }

    /// Same variable one level higher (the image under the shift T^{(l)} -> T^{(l+1)}).
    pub fn shifted(self, by: u16) -> VarId {
        VarId {
            level: self.level + by,
            ..self
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes = |n: u16| "'".repeat(n as usize);
        match self.family {
            Family::T => write!(f, "T{}_{}{}", self.level, self.i, self.j),
            Family::Q => write!(f, "Q{}_{}{}", self.level, self.i, self.j),
            Family::Y => write!(f, "y{}_{}", self.i, self.j),
            Family::U => write!(f, "u{}", self.level),
            Family::V => write!(f, "v{}", self.level),
            Family::Z => write!(f, "z{}{}", self.i, primes(self.level)),
            Family::ZPhi => write!(f, "z{}^phi{}", self.i, self.level),
            Family::Aux if self.j == 0 => write!(f, "x{}{}", self.i, primes(self.level)),
            Family::Aux => write!(f, "X{}_{}{}", self.level, self.i, self.j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(VarId::t(1, 2, 1).to_string(), "T1_12");
        assert_eq!(VarId::u(3).to_string(), "u3");
        assert_eq!(VarId::y(0, 2).to_string(), "y0_2");
        assert_eq!(VarId::z(1, 0).to_string(), "z1");
        assert_eq!(VarId::z(0, 2).to_string(), "z0''");
    }

    #[test]
    fn symmetric_alias_and_order() {
        assert_eq!(VarId::t(0, 2, 1), VarId::t(0, 1, 2));
        assert!(VarId::t(0, 2, 2) < VarId::t(1, 1, 1));
        assert!(VarId::t(5, 1, 1) < VarId::u(0));
    }
}
