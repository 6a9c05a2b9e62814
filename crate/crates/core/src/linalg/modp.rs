//! Arithmetic modulo word-sized primes, and primes carrying roots of unity.

/// Prime field F_p with p < 2^31 so that products fit comfortably in u64
/// and long dot products in u128.
#[derive(Clone, Copy, Debug)]
pub struct ModP {
    pub p: u64,
}

impl ModP {
    pub fn new(p: u64) -> Self {
        assert!(p < (1 << 62));
        ModP { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero modulo p");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

fn mod_pow_u128(a: u64, mut e: u64, m: u64) -> u64 {
    let mut r: u128 = 1 % m as u128;
    let mut b = a as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    r as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// A prime p ≡ 1 (mod order) together with a primitive order-th root of
/// unity r in F_p.
#[derive(Clone, Copy, Debug)]
pub struct RootPrime {
    pub field: ModP,
    pub order: u64,
    pub root: u64,
}

impl RootPrime {
    /// ζ^e mapped to F_p.
    pub fn root_pow(&self, e: i64) -> u64 {
        let e = e.rem_euclid(self.order as i64) as u64;
        self.field.pow(self.root, e)
    }
}

/// The `index`-th prime (in a fixed scrambled sequence) below 2^31 that is
/// congruent to 1 modulo `order`, with a primitive root of that order.
pub fn root_prime(order: u64, index: usize) -> RootPrime {
    let order = order.max(1);
    // Walk k in a fixed pseudo-random order so that distinct indices give
    // unrelated primes; the walk is deterministic.
    let top = (1u64 << 31) / order;
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15 ^ order.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    let mut found = 0usize;
    loop {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let k = top / 2 + (state >> 33) % (top / 2).max(1);
        let p = k * order + 1;
        if p >= (1 << 31) || !is_prime_u64(p) {
            continue;
        }
        if found < index {
            found += 1;
            continue;
        }
        let field = ModP::new(p);
        let factors = distinct_prime_factors(order);
        let cofactor = (p - 1) / order;
        let mut g = 2u64;
        loop {
            let r = field.pow(g, cofactor);
            if factors.iter().all(|&q| field.pow(r, order / q) != 1) {
                return RootPrime { field, order, root: r };
            }
            g += 1;
        }
    }
}
