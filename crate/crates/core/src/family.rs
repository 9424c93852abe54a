//! Families of subsets of `{0, .., n-1}` as bit strings of length `2^n`:
//! bit `C` is set iff subset `C` is a member. Packed into `u64` words, at
//! least one word even when `2^n < 64`.

/// Masks selecting, within a word, the positions whose element-`j` bit is 0.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[inline]
pub fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of valid positions in each word.
#[inline]
pub fn word_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

pub fn empty(n: usize) -> Vec<u64> {
    vec![0; word_count(n)]
}

pub fn full(n: usize) -> Vec<u64> {
    vec![word_mask(n); word_count(n)]
}

#[inline]
pub fn contains(bits: &[u64], set: u64) -> bool {
    bits[(set >> 6) as usize] >> (set & 63) & 1 == 1
}

#[inline]
pub fn insert(bits: &mut [u64], set: u64) {
    bits[(set >> 6) as usize] |= 1 << (set & 63);
}

pub fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Members in increasing mask order.
pub fn members(bits: &[u64]) -> impl Iterator<Item = u64> + '_ {
    bits.iter().enumerate().flat_map(|(i, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(((i as u64) << 6) | b)
            }
        })
    })
}

#[inline]
fn flip_word(w: u64, j: usize) -> u64 {
    let s = 1u32 << j;
    let m = LOW_HALF[j];
    ((w & m) << s) | ((w >> s) & m)
}

/// The family `{ C Δ {j} : C ∈ F }`.
pub fn flip(bits: &[u64], j: usize) -> Vec<u64> {
    if j < 6 {
        bits.iter().map(|&w| flip_word(w, j)).collect()
    } else {
        let stride = 1usize << (j - 6);
        (0..bits.len()).map(|i| bits[i ^ stride]).collect()
    }
}

/// Single-word form of [`flip`] for `n <= 6`.
#[inline]
pub fn flip1(w: u64, j: usize) -> u64 {
    flip_word(w, j)
}

/// `F` is closed under adding element `j`.
fn closed_under_adding(bits: &[u64], j: usize) -> bool {
    if j < 6 {
        let s = 1u32 << j;
        bits.iter().all(|&w| ((w & LOW_HALF[j]) << s) & !w == 0)
    } else {
        let stride = 1usize << (j - 6);
        (0..bits.len()).filter(|i| i & stride == 0).all(|i| bits[i] & !bits[i | stride] == 0)
    }
}

pub fn is_increasing(bits: &[u64], n: usize) -> bool {
    (0..n).all(|j| closed_under_adding(bits, j))
}

pub fn complement(bits: &[u64], n: usize) -> Vec<u64> {
    let m = word_mask(n);
    bits.iter().map(|&w| !w & m).collect()
}

/// Member-wise complement `{ [n] \ C : C ∈ F }`: reverses the bit string.
pub fn reflect(bits: &[u64], n: usize) -> Vec<u64> {
    if n < 6 {
        let len = 1u32 << n;
        vec![bits[0].reverse_bits() >> (64 - len)]
    } else {
        bits.iter().rev().map(|w| w.reverse_bits()).collect()
    }
}

/// Membership is invariant under toggling any element outside `v0`.
pub fn depends_only_on(bits: &[u64], n: usize, v0: u64) -> bool {
    (0..n).filter(|j| v0 >> j & 1 == 0).all(|j| flip(bits, j) == bits)
}

/// For every witness set `V0`, the family of `C` whose cylinder
/// `{ D : D ∩ V0 = C ∩ V0 }` lies inside `F`. Indexed by `V0`.
///
/// Shrinking `V0` by one element `x` intersects with the `x`-flip, so the
/// table is filled from the full set downwards.
pub fn cylinder_interiors(bits: &[u64], n: usize) -> Vec<Vec<u64>> {
    let full = (1usize << n) - 1;
    let mut table = vec![Vec::new(); full + 1];
    table[full] = bits.to_vec();
    for v0 in (0..full).rev() {
        let x = (!v0).trailing_zeros() as usize;
        let parent = &table[v0 | 1 << x];
        let flipped = flip(parent, x);
        table[v0] = parent.iter().zip(&flipped).map(|(p, f)| p & f).collect();
    }
    table
}

/// Disjoint occurrence for arbitrary families, with one witness pair per
/// member: `C` is in the result iff some disjoint `V_A, V_B` have both
/// cylinders of `C` inside `a` and `b` respectively.
///
/// Enlarging a witness set shrinks its cylinder, so it suffices to try
/// `V_B = [n] \ V_A` for each `V_A`. Witnesses are the least such `V_A`.
pub fn box_general_witnessed(a: &[u64], b: &[u64], n: usize) -> (Vec<u64>, Vec<(u64, u64, u64)>) {
    let full = (1u64 << n) - 1;
    let ia = cylinder_interiors(a, n);
    let ib = cylinder_interiors(b, n);
    let mut result = empty(n);
    let mut witnesses = Vec::new();
    for va in 0..=full {
        let vb = full ^ va;
        let (ca, cb) = (&ia[va as usize], &ib[vb as usize]);
        for (i, ((r, x), y)) in result.iter_mut().zip(ca).zip(cb).enumerate() {
            let fresh = x & y & !*r;
            *r |= x & y;
            let mut rest = fresh;
            while rest != 0 {
                let bit = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                witnesses.push((((i as u64) << 6) | bit, va, vb));
            }
        }
    }
    witnesses.sort_unstable();
    (result, witnesses)
}

/// Membership-only variant of [`box_general_witnessed`].
pub fn box_general(a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let full = (1usize << n) - 1;
    let ia = cylinder_interiors(a, n);
    let ib = cylinder_interiors(b, n);
    let mut result = empty(n);
    for va in 0..=full {
        for ((r, x), y) in result.iter_mut().zip(&ia[va]).zip(&ib[full ^ va]) {
            *r |= x & y;
        }
    }
    result
}
