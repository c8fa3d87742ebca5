//! Seeded instances used by the tests, the CLI and the acceptance run.

use crate::family::Members;
use coherent_decomp::{decompose_locally_small, Decomposition};
use ideal_core::{AtomSet, FamilySpec, GroundSet, IdealInstance};
use path_partition::Coloring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ranks per color block.
pub const BLOCK_SPAN: usize = 4;
pub const FIXTURE_STAGES: usize = 8;

#[derive(Clone, Debug)]
pub struct MgFixture {
    pub seed: u64,
    pub instance: IdealInstance,
    pub family: FamilySpec,
    pub decomposition: Decomposition,
    pub coloring: Coloring,
}

impl MgFixture {
    pub fn menu(&self) -> Vec<AtomSet> {
        self.family.sets()
    }

    pub fn height(&self) -> usize {
        Members::new(&self.family).height()
    }
}

/// Instance whose only proper generator holds every family atom; one extra
/// atom keeps the ground set out of the ideal.
pub fn single_generator_instance(atoms: AtomSet) -> IdealInstance {
    let n = atoms.iter().max().map_or(0, |m| m + 1);
    let escape = AtomSet::singleton(n);
    IdealInstance::new(GroundSet::range(n + 1), vec![AtomSet::prefix(n), escape], 1)
}

/// Atom-mode decomposition whose last `whole` stages all give the member.
pub fn padded_decomposition(fam: &FamilySpec, stage_count: usize, whole: usize) -> Decomposition {
    let mut dec = decompose_locally_small(fam, stage_count + 1 - whole, None)
        .expect("atom mode always coheres");
    for st in &mut dec.stages {
        let last = *st.last().unwrap();
        st.resize(stage_count, last);
    }
    dec.stage_count = stage_count;
    dec
}

/// Number of crossing colors needed so that no 6-path of crossing pairs is
/// monochromatic: each residue class may hold at most four blocks.
pub fn crossing_colors(fam: &FamilySpec) -> usize {
    let blocks = Members::new(fam).height().div_ceil(BLOCK_SPAN);
    blocks.div_ceil(4).max(1)
}

/// Pairs inside one rank block get the block parity. A pair leaving block
/// `b` gets stage `top - (b mod crossing)`, one of the top stages.
pub fn block_coloring(fam: &FamilySpec, stage_count: usize, crossing: usize) -> Coloring {
    let m = Members::new(fam);
    let top = stage_count as u64 - 1;
    Coloring::from_fn(&m.poset(), 2, stage_count as u64, |w| {
        let (lo, hi) = (m.rank[w[0]] / BLOCK_SPAN, m.rank[w[1]] / BLOCK_SPAN);
        if lo == hi {
            (lo % 2) as u64
        } else {
            top - (lo % crossing) as u64
        }
    })
}

/// A spine of height 6 to 8 with side members that rejoin the spine one
/// level up, eight members in all.
pub fn mg_family(seed: u64) -> FamilySpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let height = rng.gen_range(6..=8);
    let mut next = 0usize;
    let mut fresh = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=2);
        let s = AtomSet::from_indices(next..next + n);
        next += n;
        s
    };
    let mut spine = Vec::with_capacity(height);
    for r in 0..height {
        let prev = if r == 0 { AtomSet::EMPTY } else { spine[r - 1] };
        spine.push(prev | fresh(&mut rng));
    }
    let mut sides = Vec::new();
    for _ in height..8 {
        let r = rng.gen_range(1..height - 1);
        let own = fresh(&mut rng);
        sides.push((r, own));
        for s in spine.iter_mut().skip(r + 1) {
            *s |= own;
        }
    }
    let mut sets = spine.clone();
    sets.extend(sides.iter().map(|&(r, own)| spine[r - 1] | own));
    FamilySpec::from_bare(&sets)
}

pub fn mg_fixture(seed: u64) -> MgFixture {
    let family = mg_family(seed);
    from_family(seed, family)
}

fn from_family(seed: u64, family: FamilySpec) -> MgFixture {
    let atoms = family.sets().into_iter().fold(AtomSet::EMPTY, |a, s| a | s);
    let crossing = crossing_colors(&family);
    let decomposition = padded_decomposition(&family, FIXTURE_STAGES, crossing);
    let coloring = block_coloring(&family, FIXTURE_STAGES, crossing);
    MgFixture {
        seed,
        instance: single_generator_instance(atoms),
        family,
        decomposition,
        coloring,
    }
}

/// Stack copies of a fixture family, each on top of all the atoms of the
/// copies below it. The count is capped so the atoms fit.
pub fn stacked_fixture(seed: u64, copies: usize) -> MgFixture {
    let base = mg_family(seed).sets();
    let width = base.iter().fold(AtomSet::EMPTY, |a, &s| a | s).len();
    let copies = copies.min((ideal_core::MAX_ATOMS - 1) / width);
    let mut sets = Vec::new();
    for c in 0..copies {
        let floor = AtomSet::prefix(c * width);
        for s in &base {
            sets.push(floor | AtomSet::from_indices(s.iter().map(|a| a + c * width)));
        }
    }
    from_family(seed, FamilySpec::from_bare(&sets))
}

/// Six nested members `A_0 ⊂ ... ⊂ A_5`. Member `A_i` holds the chain
/// atoms `0..=i` and one body atom per level. The chain `C_ξ = {0..=ξ}`
/// runs one step past the top member. `𝓑` holds the down-sets, colored by
/// the index of the lower one.
pub fn three_fixture() -> (IdealInstance, crate::VsgThreeInputs) {
    const LEVELS: usize = 6;
    const BODY: usize = LEVELS + 1;
    let sets: Vec<AtomSet> = (0..LEVELS)
        .map(|i| AtomSet::prefix(i + 1) | AtomSet::from_indices(BODY..=BODY + i))
        .collect();
    let family = FamilySpec::from_bare(&sets);
    let atoms = sets.iter().fold(AtomSet::prefix(LEVELS + 1), |a, &s| a | s);
    let b_family: Vec<AtomSet> = (0..LEVELS).map(|i| AtomSet::prefix(i + 1)).collect();
    let b_poset = Members::from_sets(&b_family).poset();
    let stage_count = LEVELS;
    let c_chain: Vec<AtomSet> = (0..=LEVELS).map(|x| AtomSet::prefix(x + 1)).collect();
    let inputs = crate::VsgThreeInputs {
        phi3: crate::VsgThreeInputs::canonical_phi3(&family, &c_chain),
        c_chain,
        enumerations: (0..LEVELS).map(|i| (0..=i).collect()).collect(),
        b_coloring: Coloring::from_fn(&b_poset, 2, stage_count as u64, |w| w[0] as u64),
        b_family,
        stage_count,
        decomposition: decompose_locally_small(&family, stage_count, None)
            .expect("atom mode always coheres"),
        family,
    };
    (single_generator_instance(atoms), inputs)
}
