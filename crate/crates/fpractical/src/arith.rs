//! Factorization, divisor enumeration and the catalog of arithmetic
//! functions together with their divisor sums `S_f(n) = sum of f(d), d | n`.
//!
//! All inputs live in the 64-bit range (`1 <= n < 2^63`); divisor sums and
//! subset sums are carried in 128 bits with explicit overflow reporting.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Largest accepted input, exclusive.
pub const MAX_N: u64 = 1 << 63;

/// Prime-power decomposition of a positive integer in canonical ascending
/// order. `n == 1` has an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1 (empty product).
    pub fn one() -> Self {
        Factorization { n: 1, factors: Vec::new() }
    }

    /// Builds a factorization from raw parts, validating the invariants:
    /// primes strictly increasing, exponents >= 1, product equal to `n`.
    pub fn from_parts(n: u64, factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut product: u64 = 1;
        let mut last = 0u64;
        for &(p, e) in &factors {
            if p <= last || e == 0 || !is_prime(p) {
                return Err(Error::Contract(format!(
                    "invalid factor ({p}, {e}) in factorization of {n}"
                )));
            }
            last = p;
            for _ in 0..e {
                product = product
                    .checked_mul(p)
                    .ok_or(Error::Overflow { context: "factorization product" })?;
            }
        }
        if product != n || n == 0 {
            return Err(Error::Contract(format!(
                "factors multiply to {product}, not {n}"
            )));
        }
        Ok(Factorization { n, factors })
    }

    pub(crate) fn from_sorted_unchecked(n: u64, factors: Vec<(u64, u32)>) -> Self {
        Factorization { n, factors }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of divisors, the product of `e_i + 1`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    /// `P(n)`, the largest prime factor. `None` for `n = 1`.
    pub fn largest_prime_factor(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Exponent of `p` in `n`.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// The factorization of `n * p^k` for a prime `p` coprime to `n`.
    pub fn times_coprime_prime_power(&self, p: u64, k: u32) -> Result<Self> {
        if self.valuation(p) != 0 {
            return Err(Error::NotCoprime { n: self.n, p });
        }
        let mut n = self.n;
        for _ in 0..k {
            n = n
                .checked_mul(p)
                .ok_or(Error::Overflow { context: "n * p^k" })?;
        }
        if n >= MAX_N {
            return Err(Error::OutOfRange(n));
        }
        let mut factors = self.factors.clone();
        let pos = factors.partition_point(|&(q, _)| q < p);
        factors.insert(pos, (p, k));
        Ok(Factorization { n, factors })
    }

    /// The factorization of `n / p^{v_p(n)}`.
    pub fn without_prime(&self, p: u64) -> Self {
        let mut n = self.n;
        let mut factors = Vec::with_capacity(self.factors.len());
        for &(q, e) in &self.factors {
            if q == p {
                for _ in 0..e {
                    n /= q;
                }
            } else {
                factors.push((q, e));
            }
        }
        Factorization { n, factors }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes `n` by trial division with a 2-3 wheel.
///
/// Census workloads should factorize through a prepared
/// [`crate::census::SpfSieve`] instead; this entry point serves one-off
/// queries of arbitrary 63-bit integers.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n >= MAX_N {
        return Err(Error::OutOfRange(n));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    for p in [2u64, 3] {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut p = 5u64;
    let mut gap = 2u64; // alternates 2, 4: 5, 7, 11, 13, 17, ...
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        p += gap;
        gap = 6 - gap;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// All divisors of `n` in ascending order, exactly `tau(n)` of them.
pub fn divisors(fact: &Factorization) -> Vec<u64> {
    let mut out = Vec::with_capacity(fact.divisor_count() as usize);
    out.push(1u64);
    for &(p, e) in fact.factors() {
        let len = out.len();
        let mut pw = 1u64;
        for _ in 0..e {
            pw *= p;
            for i in 0..len {
                out.push(out[i] * pw);
            }
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut p = 5u64;
    let mut gap = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += gap;
        gap = 6 - gap;
    }
    true
}

/// Primes up to and including `limit`, by a plain Eratosthenes sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_checked(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(Error::Overflow { context: "lcm" })
}

/// Carmichael function at a prime power: `lambda(2) = 1`, `lambda(4) = 2`,
/// `lambda(2^k) = 2^(k-2)` for `k >= 3`, and `lambda(p^k) = phi(p^k)` for
/// odd `p`.
pub fn carmichael_prime_power(p: u64, k: u32) -> Result<u64> {
    if p == 2 {
        return Ok(match k {
            1 => 1,
            2 => 2,
            _ => 1u64
                .checked_shl(k - 2)
                .ok_or(Error::Overflow { context: "lambda(2^k)" })?,
        });
    }
    let pk1 = p
        .checked_pow(k - 1)
        .ok_or(Error::Overflow { context: "lambda(p^k)" })?;
    pk1.checked_mul(p - 1)
        .ok_or(Error::Overflow { context: "lambda(p^k)" })
}

/// Rule assigning a value to each prime power, the data behind
/// multiplicative and additive catalog entries.
#[derive(Debug, Clone)]
pub enum PrimePowerRule {
    /// `p^k` (the identity function).
    Identity,
    /// `phi(p^k) = p^k - p^(k-1)`.
    Totient,
    /// `phi*(p^k) = p^k - 1` (unitary totient).
    UnitaryTotient,
    /// `tau(p^k) = k + 1`.
    DivisorCount,
    /// `sigma(p^k) = 1 + p + ... + p^k`.
    DivisorSum,
    /// Constantly 1 on prime powers (`omega`).
    One,
    /// `k` (`Omega`, count with multiplicity).
    Multiplicity,
    /// `p` (the additive `a1`, sum of distinct primes).
    Prime,
    /// `v_q(p^k)`: `k` when `p = q`, else 0.
    PadicValuation(u64),
    /// `2^k`, so that `f(n) = 2^Omega(n)` (the extremal function `h`).
    PowerOfTwo,
    /// 2 on prime powers of primes dividing `m`, 3 otherwise (the `f_m`
    /// family with practical density `1 - phi(m)/m`).
    TwoOrThree(u64),
    /// Finite table of overrides on top of a fallback rule.
    Table {
        entries: BTreeMap<(u64, u32), u64>,
        fallback: Box<PrimePowerRule>,
    },
}

impl PrimePowerRule {
    /// Value at `p^k`, `k >= 1`, as a 64-bit integer (the weight width).
    pub fn value(&self, p: u64, k: u32) -> Result<u64> {
        u64::try_from(self.value_u128(p, k)?)
            .map_err(|_| Error::Overflow { context: "f(p^k)" })
    }

    /// Value at `p^k` in 128 bits, for the bounded scans whose inequalities
    /// stay meaningful beyond the weight width.
    pub fn value_u128(&self, p: u64, k: u32) -> Result<u128> {
        let overflow = |ctx| Error::Overflow { context: ctx };
        let p = p as u128;
        match self {
            PrimePowerRule::Identity => {
                p.checked_pow(k).ok_or(overflow("p^k"))
            }
            PrimePowerRule::Totient => {
                let pk1 = p.checked_pow(k - 1).ok_or(overflow("phi(p^k)"))?;
                pk1.checked_mul(p - 1).ok_or(overflow("phi(p^k)"))
            }
            PrimePowerRule::UnitaryTotient => {
                let pk = p.checked_pow(k).ok_or(overflow("phi*(p^k)"))?;
                Ok(pk - 1)
            }
            PrimePowerRule::DivisorCount => Ok(k as u128 + 1),
            PrimePowerRule::DivisorSum => {
                let mut sum = 1u128;
                let mut pw = 1u128;
                for _ in 0..k {
                    pw = pw.checked_mul(p).ok_or(overflow("sigma(p^k)"))?;
                    sum = sum.checked_add(pw).ok_or(overflow("sigma(p^k)"))?;
                }
                Ok(sum)
            }
            PrimePowerRule::One => Ok(1),
            PrimePowerRule::Multiplicity => Ok(k as u128),
            PrimePowerRule::Prime => Ok(p),
            PrimePowerRule::PadicValuation(q) => {
                Ok(if p == *q as u128 { k as u128 } else { 0 })
            }
            PrimePowerRule::PowerOfTwo => {
                1u128.checked_shl(k).ok_or(overflow("2^k"))
            }
            PrimePowerRule::TwoOrThree(m) => {
                Ok(if *m as u128 % p == 0 { 2 } else { 3 })
            }
            PrimePowerRule::Table { entries, fallback } => {
                match entries.get(&(p as u64, k)) {
                    Some(&v) => Ok(v as u128),
                    None => fallback.value_u128(p as u64, k),
                }
            }
        }
    }
}

/// How values at prime powers combine into a value on all of `N`.
#[derive(Debug, Clone)]
pub enum FunctionKind {
    /// `f(1) = 1`, `f(n)` the product of prime-power values.
    Multiplicative(PrimePowerRule),
    /// `f(1) = 0`, `f(n)` the sum of prime-power values.
    Additive(PrimePowerRule),
    /// Evaluated from the whole factorization at once.
    Direct(DirectRule),
}

/// The non-multiplicative, non-additive catalog entries.
#[derive(Debug, Clone, Copy)]
pub enum DirectRule {
    /// Carmichael `lambda`: least `m` with `a^m = 1 (mod n)` for all `a`
    /// coprime to `n`; the lcm of the prime-power values.
    Carmichael,
    /// `s(n) = sigma(n) - n`, the sum of proper divisors.
    ProperDivisorSum,
}

/// A named arithmetic function `f : N -> N`.
///
/// Catalog entries are built by the constructors below; user-defined
/// functions come from [`crate::config`]. Specs are immutable and safely
/// shareable across threads.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    name: String,
    kind: FunctionKind,
}

impl FunctionSpec {
    pub fn new(name: impl Into<String>, kind: FunctionKind) -> Self {
        FunctionSpec { name: name.into(), kind }
    }

    pub fn identity() -> Self {
        Self::new("identity", FunctionKind::Multiplicative(PrimePowerRule::Identity))
    }

    pub fn phi() -> Self {
        Self::new("phi", FunctionKind::Multiplicative(PrimePowerRule::Totient))
    }

    pub fn phi_star() -> Self {
        Self::new("phi-star", FunctionKind::Multiplicative(PrimePowerRule::UnitaryTotient))
    }

    /// Carmichael `lambda`. Not multiplicative (values combine by lcm), so
    /// it is carried as a direct, factorization-driven rule.
    pub fn carmichael() -> Self {
        Self::new("lambda", FunctionKind::Direct(DirectRule::Carmichael))
    }

    pub fn tau() -> Self {
        Self::new("tau", FunctionKind::Multiplicative(PrimePowerRule::DivisorCount))
    }

    pub fn sigma() -> Self {
        Self::new("sigma", FunctionKind::Multiplicative(PrimePowerRule::DivisorSum))
    }

    pub fn omega() -> Self {
        Self::new("omega", FunctionKind::Additive(PrimePowerRule::One))
    }

    pub fn big_omega() -> Self {
        Self::new("big-omega", FunctionKind::Additive(PrimePowerRule::Multiplicity))
    }

    /// `v_p`, the exact power of `p` dividing `n`.
    pub fn v_p(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter {
                name: "vp".into(),
                reason: format!("{p} is not prime"),
            });
        }
        Ok(Self::new(
            format!("v{p}"),
            FunctionKind::Additive(PrimePowerRule::PadicValuation(p)),
        ))
    }

    /// `h(n) = 2^Omega(n)`, the multiplicative function attaining equality
    /// in the every-integer criterion at every prime power.
    pub fn h() -> Self {
        Self::new("h", FunctionKind::Multiplicative(PrimePowerRule::PowerOfTwo))
    }

    /// `s(n) = sigma(n) - n`, neither additive nor multiplicative.
    pub fn proper_divisor_sum() -> Self {
        Self::new("s", FunctionKind::Direct(DirectRule::ProperDivisorSum))
    }

    /// `a1(n)`, the sum of the distinct primes dividing `n`.
    pub fn a1() -> Self {
        Self::new("a1", FunctionKind::Additive(PrimePowerRule::Prime))
    }

    /// The family member `f_m`: 2 on prime powers of primes dividing `m`,
    /// 3 elsewhere.
    pub fn f_m(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter {
                name: "fn".into(),
                reason: "parameter must be positive".into(),
            });
        }
        Ok(Self::new(
            format!("f{m}"),
            FunctionKind::Multiplicative(PrimePowerRule::TwoOrThree(m)),
        ))
    }

    /// Resolves a catalog selector (the CLI `--f` grammar): one of
    /// `identity`, `phi`, `phi-star`, `lambda-star`, `tau`, `sigma`,
    /// `omega`, `big-omega`, `vp`, `h`, `s`, `a1`, `fn`; `vp` and `fn`
    /// require a parameter.
    pub fn catalog(name: &str, param: Option<u64>) -> Result<Self> {
        let require = |what| match param {
            Some(v) => Ok(v),
            None => Err(Error::MissingParameter { name: name.into(), what }),
        };
        match name {
            "identity" | "id" => Ok(Self::identity()),
            "phi" => Ok(Self::phi()),
            "phi-star" => Ok(Self::phi_star()),
            "lambda-star" | "lambda" => Ok(Self::carmichael()),
            "tau" => Ok(Self::tau()),
            "sigma" => Ok(Self::sigma()),
            "omega" => Ok(Self::omega()),
            "big-omega" => Ok(Self::big_omega()),
            "vp" => Self::v_p(require("<prime p>")?),
            "h" => Ok(Self::h()),
            "s" => Ok(Self::proper_divisor_sum()),
            "a1" => Ok(Self::a1()),
            "fn" => Self::f_m(require("<positive integer m>")?),
            other => Err(Error::UnknownFunction(other.into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self.kind, FunctionKind::Multiplicative(_))
    }

    pub fn is_additive(&self) -> bool {
        matches!(self.kind, FunctionKind::Additive(_))
    }

    /// `f(p^k)` for `k >= 1`, defined for every kind.
    pub fn prime_power_value(&self, p: u64, k: u32) -> Result<u64> {
        u64::try_from(self.prime_power_value_u128(p, k)?)
            .map_err(|_| Error::Overflow { context: "f(p^k)" })
    }

    /// `f(p^k)` in 128 bits; see [`PrimePowerRule::value_u128`].
    pub fn prime_power_value_u128(&self, p: u64, k: u32) -> Result<u128> {
        match &self.kind {
            FunctionKind::Multiplicative(rule) | FunctionKind::Additive(rule) => {
                rule.value_u128(p, k)
            }
            FunctionKind::Direct(DirectRule::Carmichael) => {
                if p == 2 {
                    return Ok(match k {
                        1 => 1,
                        2 => 2,
                        _ => 1u128
                            .checked_shl(k - 2)
                            .ok_or(Error::Overflow { context: "lambda(2^k)" })?,
                    });
                }
                let p = p as u128;
                let pk1 = p
                    .checked_pow(k - 1)
                    .ok_or(Error::Overflow { context: "lambda(p^k)" })?;
                pk1.checked_mul(p - 1)
                    .ok_or(Error::Overflow { context: "lambda(p^k)" })
            }
            FunctionKind::Direct(DirectRule::ProperDivisorSum) => {
                // s(p^k) = 1 + p + ... + p^(k-1)
                let p = p as u128;
                let mut sum = 1u128;
                let mut pw = 1u128;
                for _ in 1..k {
                    pw = pw
                        .checked_mul(p)
                        .ok_or(Error::Overflow { context: "s(p^k)" })?;
                    sum = sum
                        .checked_add(pw)
                        .ok_or(Error::Overflow { context: "s(p^k)" })?;
                }
                Ok(sum)
            }
        }
    }

    /// Exact `f(n)` from the factorization of `n`.
    pub fn eval(&self, fact: &Factorization) -> Result<u64> {
        match &self.kind {
            FunctionKind::Multiplicative(rule) => {
                let mut acc: u64 = 1;
                for &(p, e) in fact.factors() {
                    acc = acc
                        .checked_mul(rule.value(p, e)?)
                        .ok_or(Error::Overflow { context: "f(n)" })?;
                }
                Ok(acc)
            }
            FunctionKind::Additive(rule) => {
                let mut acc: u64 = 0;
                for &(p, e) in fact.factors() {
                    acc = acc
                        .checked_add(rule.value(p, e)?)
                        .ok_or(Error::Overflow { context: "f(n)" })?;
                }
                Ok(acc)
            }
            FunctionKind::Direct(DirectRule::Carmichael) => {
                let mut acc: u64 = 1;
                for &(p, e) in fact.factors() {
                    acc = lcm_checked(acc, carmichael_prime_power(p, e)?)?;
                }
                Ok(acc)
            }
            FunctionKind::Direct(DirectRule::ProperDivisorSum) => {
                let mut sigma: u128 = 1;
                for &(p, e) in fact.factors() {
                    let v = PrimePowerRule::DivisorSum.value(p, e)? as u128;
                    sigma = sigma
                        .checked_mul(v)
                        .ok_or(Error::Overflow { context: "sigma(n)" })?;
                }
                let s = sigma - fact.n() as u128;
                u64::try_from(s).map_err(|_| Error::Overflow { context: "s(n)" })
            }
        }
    }

    /// The multiset `{f(d) : d | n}` in divisor-walk order (unsorted),
    /// appended to `out`. This is the workhorse of the practicality
    /// decisions; it never allocates beyond `out`.
    pub fn divisor_values(&self, fact: &Factorization, out: &mut Vec<u64>) -> Result<()> {
        self.divisor_values_of_factors(fact.factors(), out)
    }

    /// As [`Self::divisor_values`], from a raw factor slice. The census hot
    /// path calls this with sieve-produced factors to skip re-validation.
    pub(crate) fn divisor_values_of_factors(
        &self,
        factors: &[(u64, u32)],
        out: &mut Vec<u64>,
    ) -> Result<()> {
        out.clear();
        match &self.kind {
            FunctionKind::Multiplicative(rule) => {
                out.push(1);
                for &(p, e) in factors {
                    let len = out.len();
                    for k in 1..=e {
                        let v = rule.value(p, k)?;
                        for i in 0..len {
                            let w = out[i]
                                .checked_mul(v)
                                .ok_or(Error::Overflow { context: "f(d)" })?;
                            out.push(w);
                        }
                    }
                }
            }
            FunctionKind::Additive(rule) => {
                out.push(0);
                for &(p, e) in factors {
                    let len = out.len();
                    for k in 1..=e {
                        let v = rule.value(p, k)?;
                        for i in 0..len {
                            let w = out[i]
                                .checked_add(v)
                                .ok_or(Error::Overflow { context: "f(d)" })?;
                            out.push(w);
                        }
                    }
                }
            }
            FunctionKind::Direct(DirectRule::Carmichael) => {
                out.push(1);
                for &(p, e) in factors {
                    let len = out.len();
                    for k in 1..=e {
                        let v = carmichael_prime_power(p, k)?;
                        for i in 0..len {
                            out.push(lcm_checked(out[i], v)?);
                        }
                    }
                }
            }
            FunctionKind::Direct(DirectRule::ProperDivisorSum) => {
                // Walk divisors carrying (d, sigma(d)) and emit sigma(d) - d.
                let tau: u64 = factors.iter().map(|&(_, e)| e as u64 + 1).product();
                let mut pairs: Vec<(u64, u128)> = Vec::with_capacity(tau as usize);
                pairs.push((1, 1));
                for &(p, e) in factors {
                    let len = pairs.len();
                    let mut pw = 1u64;
                    let mut sig = 1u128;
                    for _ in 1..=e {
                        pw = pw
                            .checked_mul(p)
                            .ok_or(Error::Overflow { context: "d" })?;
                        sig += pw as u128;
                        for i in 0..len {
                            let (d, sd) = pairs[i];
                            let nd = d
                                .checked_mul(pw)
                                .ok_or(Error::Overflow { context: "d" })?;
                            let nsig = sd
                                .checked_mul(sig)
                                .ok_or(Error::Overflow { context: "sigma(d)" })?;
                            pairs.push((nd, nsig));
                        }
                    }
                }
                for (d, sd) in pairs {
                    let s = sd - d as u128;
                    out.push(
                        u64::try_from(s)
                            .map_err(|_| Error::Overflow { context: "s(d)" })?,
                    );
                }
            }
        }
        Ok(())
    }

    /// Exact `S_f(n)`, the sum of `f(d)` over all divisors of `n`, in
    /// 128-bit arithmetic. Multiplicative `f` uses the product over prime
    /// powers of `1 + f(p) + ... + f(p^e)`; other kinds sum the explicit
    /// divisor values.
    pub fn sum_over_divisors(&self, fact: &Factorization) -> Result<u128> {
        match &self.kind {
            FunctionKind::Multiplicative(rule) => {
                let mut acc: u128 = 1;
                for &(p, e) in fact.factors() {
                    let mut local: u128 = 1;
                    for k in 1..=e {
                        local = local
                            .checked_add(rule.value(p, k)? as u128)
                            .ok_or(Error::Overflow { context: "S_f" })?;
                    }
                    acc = acc
                        .checked_mul(local)
                        .ok_or(Error::Overflow { context: "S_f" })?;
                }
                Ok(acc)
            }
            _ => {
                let mut values = Vec::with_capacity(fact.divisor_count() as usize);
                self.divisor_values(fact, &mut values)?;
                let mut acc: u128 = 0;
                for v in values {
                    acc = acc
                        .checked_add(v as u128)
                        .ok_or(Error::Overflow { context: "S_f" })?;
                }
                Ok(acc)
            }
        }
    }

    /// Bounded monotonicity scan: reports every `(p, k)` with
    /// `f(p^(k-1)) > f(p^k)` for `p <= p_max`, `k <= k_max`. Catalog
    /// entries come back clean; user-defined tables may not, which is
    /// reported as a warning rather than a hard error.
    pub fn monotonicity_warnings(&self, p_max: u64, k_max: u32) -> Vec<String> {
        let mut warnings = Vec::new();
        for p in primes_up_to(p_max) {
            let mut prev = match &self.kind {
                FunctionKind::Multiplicative(_) => 1u64,
                FunctionKind::Additive(_) => 0u64,
                FunctionKind::Direct(_) => match self.eval(&Factorization::one()) {
                    Ok(v) => v,
                    Err(_) => return warnings,
                },
            };
            for k in 1..=k_max {
                match self.prime_power_value(p, k) {
                    Ok(v) => {
                        if v < prev {
                            warnings.push(format!(
                                "{}: f({p}^{}) = {prev} > f({p}^{k}) = {v}",
                                self.name,
                                k - 1
                            ));
                        }
                        prev = v;
                    }
                    Err(_) => break, // values left the 64-bit range; stop this prime
                }
            }
        }
        warnings
    }
}
