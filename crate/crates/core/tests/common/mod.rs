//! Shared fixtures: reference coefficient tables and an independent oracle for them.
#![allow(dead_code)]

use hartogs_core::domains::hua_poly;
use hartogs_core::exact::{int, parse_rational, pochhammer};
use hartogs_core::{DomainDescriptor, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Type V at its critical exponent, `c_16` first.
pub const TABLE_V: [&str; 17] = [
    "1",
    "0",
    "595/12",
    "4165/6",
    "30042145/3456",
    "14448385/144",
    "790269316375/746496",
    "1259425781075/124416",
    "12447571001586875/143327232",
    "2957566710311675/4478976",
    "11300125622942496725/2579890176",
    "10677213117341703625/429981696",
    "65190770448545396318125/557256278016",
    "10209484788366056549125/23219011584",
    "114818904611324955416375/92876046336",
    "35779252854815307462625/15479341056",
    "33368892412222545303125/15479341056",
];

/// Type VI at its critical exponent as `(index, numerator, power of 3 in the denominator)`.
/// Index 22 is absent from the reference list.
pub const TABLE_VI: [(usize, &str, u32); 27] = [
    (27, "1", 0),
    (26, "0", 0),
    (25, "2275", 2),
    (24, "56875", 2),
    (23, "38591735", 5),
    (21, "15425515970150", 11),
    (20, "37061881356500", 9),
    (19, "184328710104188650", 14),
    (18, "3564334218619774600", 14),
    (17, "584735324681177419750", 16),
    (16, "10020732894163060819750", 16),
    (15, "352001611351295587864253500", 23),
    (14, "586664566244061492395923000", 21),
    (13, "1988637252859632373297511212000", 26),
    (12, "25672251717038124392289396301000", 26),
    (11, "8233663487061605972803486331644375", 29),
    (10, "89384793443821000370862374382625000", 29),
    (9, "1923754293102540042201539198326959366875", 36),
    (8, "209778908005712588859591649123533801875", 32),
    (7, "399192552377373476318550395682751432975625", 37),
    (6, "2728484170046421839052459199725228012518750", 37),
    (5, "47840351197962492631409316902739852226831250", 38),
    (4, "232468257762517753158460641861539626710125000", 38),
    (3, "73037107041363504672642146434776735686797778125", 42),
    (2, "23557400955895564936769134062033297681918662500", 40),
    (1, "409456797752799914624225389536137199476376953125", 42),
    (0, "394594700340674453245747775040231797415576953125", 42),
];

pub fn vi_entry(num: &str, pow3: u32) -> Rational {
    parse_rational(num).unwrap() / Rational::from_integer(BigInt::from(3).pow(pow3))
}

/// Coefficients `c_j` of `χ(μs) = μ^d Σ_j c_j (s+1)_j`, solved independently of the library's
/// binomial transform: at `s = -1-i` the factor `(s+1)_j = (-i)_j` vanishes for `j > i`, so the
/// system is lower triangular and is solved by forward substitution.
pub fn rising_coeffs_oracle(desc: &DomainDescriptor, mu: &Rational) -> Vec<Rational> {
    let chi = hua_poly(desc);
    let d = desc.d as usize;
    let mu_d = num_traits::pow(mu.clone(), d);
    let mut c: Vec<Rational> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let s = int(-1 - i as i64);
        let mut rhs = chi.eval(&(mu * &s)) / &mu_d;
        let x = int(-(i as i64));
        for (j, cj) in c.iter().enumerate() {
            rhs -= cj * pochhammer(&x, j as u64);
        }
        c.push(rhs / pochhammer(&x, i as u64));
    }
    c
}

/// `(1 - t)`-series coefficients from the rising-factorial normalization: `c_{μ,j} = μ^d j! c_j / χ(0)`.
pub fn kernel_from_rising(desc: &DomainDescriptor, mu: &Rational, rising: &[Rational]) -> Vec<Rational> {
    let chi0 = hua_poly(desc).eval(&Rational::zero());
    let mu_d = num_traits::pow(mu.clone(), desc.d as usize);
    let mut fact = Rational::one();
    rising
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j > 0 {
                fact *= int(j as i64);
            }
            &mu_d * &fact * c / &chi0
        })
        .collect()
}
