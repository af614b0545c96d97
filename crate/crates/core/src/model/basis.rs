use std::fmt;

/// Atomic level of a Λ atom: ground `g1`, excited `e`, ground `g2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    G1,
    E,
    G2,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::G1, Level::E, Level::G2];

    fn index(self) -> usize {
        match self {
            Level::G1 => 0,
            Level::E => 1,
            Level::G2 => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Level::G1 => "g1",
            Level::E => "e",
            Level::G2 => "g2",
        }
    }
}

/// Product state `|A1, A2, n⟩` with `n ∈ {0, 1}` cavity photons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateLabel {
    pub atom1: Level,
    pub atom2: Level,
    pub photons: u8,
}

impl StateLabel {
    pub const fn new(atom1: Level, atom2: Level, photons: u8) -> Self {
        StateLabel { atom1, atom2, photons }
    }

    pub fn excited_atoms(&self) -> u32 {
        (self.atom1 == Level::E) as u32 + (self.atom2 == Level::E) as u32
    }

    /// Bare excitation number: excited atoms plus photons.
    pub fn excitations(&self) -> u32 {
        self.excited_atoms() + self.photons as u32
    }

    /// Column-friendly name such as `g1g2_0`.
    pub fn tag(&self) -> String {
        format!("{}{}_{}", self.atom1.name(), self.atom2.name(), self.photons)
    }

    /// Inverse of [`StateLabel::tag`].
    pub fn from_tag(tag: &str) -> Option<Self> {
        Basis::Full.labels().into_iter().find(|l| l.tag() == tag)
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{},{}⟩", self.atom1.name(), self.atom2.name(), self.photons)
    }
}

pub const G1G2_0: StateLabel = StateLabel::new(Level::G1, Level::G2, 0);
pub const EG2_0: StateLabel = StateLabel::new(Level::E, Level::G2, 0);
pub const G2G2_1: StateLabel = StateLabel::new(Level::G2, Level::G2, 1);
pub const G2E_0: StateLabel = StateLabel::new(Level::G2, Level::E, 0);
pub const G2G1_0: StateLabel = StateLabel::new(Level::G2, Level::G1, 0);
pub const G2G2_0: StateLabel = StateLabel::new(Level::G2, Level::G2, 0);

/// The single-excitation chain in Hamiltonian row order.
pub const SUBSPACE_LABELS: [StateLabel; 5] = [G1G2_0, EG2_0, G2G2_1, G2E_0, G2G1_0];

/// Which Hilbert space a state vector or Hamiltonian lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Five-state decoupled subspace, ordered as [`SUBSPACE_LABELS`].
    Subspace,
    /// All 18 product states, `index = (3·A1 + A2)·2 + n` with levels ordered
    /// `g1, e, g2`.
    Full,
}

impl Basis {
    pub fn dim(self) -> usize {
        match self {
            Basis::Subspace => 5,
            Basis::Full => 18,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::Subspace => "subspace",
            Basis::Full => "full",
        }
    }

    pub fn label(self, index: usize) -> StateLabel {
        match self {
            Basis::Subspace => SUBSPACE_LABELS[index],
            Basis::Full => {
                let n = (index % 2) as u8;
                let pair = index / 2;
                StateLabel::new(Level::ALL[pair / 3], Level::ALL[pair % 3], n)
            }
        }
    }

    pub fn labels(self) -> Vec<StateLabel> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(self, label: StateLabel) -> Option<usize> {
        match self {
            Basis::Subspace => SUBSPACE_LABELS.iter().position(|&l| l == label),
            Basis::Full => {
                if label.photons > 1 {
                    return None;
                }
                Some((label.atom1.index() * 3 + label.atom2.index()) * 2 + label.photons as usize)
            }
        }
    }

    /// Full-basis indices of the five subspace states, in subspace order.
    pub fn subspace_in_full() -> [usize; 5] {
        SUBSPACE_LABELS.map(|l| Basis::Full.index_of(l).expect("subspace label in full basis"))
    }
}
