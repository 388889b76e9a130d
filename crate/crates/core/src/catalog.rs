//! Reference data for D_3 and D_4 under their conventional labels.
//!
//! Labels follow the usual `E_k^j` naming: `k` is the rank, `j` numbers the
//! idempotents of that rank. The matrices and the parameterized ideal families
//! are transcribed literally rather than generated, so they can serve as an
//! independent check on the enumeration code.

use num_traits::{One, Signed};

use crate::partitions::SetPartition;
use crate::ratmat::{rat, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: &'static str,
    pub matrix: Matrix,
}

const Z: (i64, i64) = (0, 1);
const O: (i64, i64) = (1, 1);
const H: (i64, i64) = (1, 2);
const T: (i64, i64) = (1, 3);
const Q: (i64, i64) = (1, 4);

fn entry(label: &'static str, rows: &[&[(i64, i64)]]) -> CatalogEntry {
    CatalogEntry {
        label,
        matrix: Matrix::from_fractions(rows).expect("catalog matrices are well formed"),
    }
}

/// The five idempotents of D_3.
pub fn d3_catalog() -> Vec<CatalogEntry> {
    vec![
        entry("E_1", &[&[T, T, T], &[T, T, T], &[T, T, T]]),
        entry("E_2^1", &[&[H, H, Z], &[H, H, Z], &[Z, Z, O]]),
        entry("E_2^2", &[&[H, Z, H], &[Z, O, Z], &[H, Z, H]]),
        entry("E_2^3", &[&[O, Z, Z], &[Z, H, H], &[Z, H, H]]),
        entry("E_3", &[&[O, Z, Z], &[Z, O, Z], &[Z, Z, O]]),
    ]
}

/// The fifteen idempotents of D_4.
pub fn d4_catalog() -> Vec<CatalogEntry> {
    vec![
        entry(
            "E_1",
            &[&[Q, Q, Q, Q], &[Q, Q, Q, Q], &[Q, Q, Q, Q], &[Q, Q, Q, Q]],
        ),
        entry(
            "E_2^1",
            &[&[H, H, Z, Z], &[H, H, Z, Z], &[Z, Z, H, H], &[Z, Z, H, H]],
        ),
        entry(
            "E_2^2",
            &[&[H, Z, H, Z], &[Z, H, Z, H], &[H, Z, H, Z], &[Z, H, Z, H]],
        ),
        entry(
            "E_2^3",
            &[&[H, Z, Z, H], &[Z, H, H, Z], &[Z, H, H, Z], &[H, Z, Z, H]],
        ),
        entry(
            "E_2^4",
            &[&[O, Z, Z, Z], &[Z, T, T, T], &[Z, T, T, T], &[Z, T, T, T]],
        ),
        entry(
            "E_2^5",
            &[&[T, Z, T, T], &[Z, O, Z, Z], &[T, Z, T, T], &[T, Z, T, T]],
        ),
        entry(
            "E_2^6",
            &[&[T, T, Z, T], &[T, T, Z, T], &[Z, Z, O, Z], &[T, T, Z, T]],
        ),
        entry(
            "E_2^7",
            &[&[T, T, T, Z], &[T, T, T, Z], &[T, T, T, Z], &[Z, Z, Z, O]],
        ),
        entry(
            "E_3^1",
            &[&[O, Z, Z, Z], &[Z, O, Z, Z], &[Z, Z, H, H], &[Z, Z, H, H]],
        ),
        entry(
            "E_3^2",
            &[&[H, H, Z, Z], &[H, H, Z, Z], &[Z, Z, O, Z], &[Z, Z, Z, O]],
        ),
        entry(
            "E_3^3",
            &[&[O, Z, Z, Z], &[Z, H, Z, H], &[Z, Z, O, Z], &[Z, H, Z, H]],
        ),
        entry(
            "E_3^4",
            &[&[O, Z, Z, Z], &[Z, H, H, Z], &[Z, H, H, Z], &[Z, Z, Z, O]],
        ),
        entry(
            "E_3^5",
            &[&[H, Z, H, Z], &[Z, O, Z, Z], &[H, Z, H, Z], &[Z, Z, Z, O]],
        ),
        entry(
            "E_3^6",
            &[&[H, Z, Z, H], &[Z, O, Z, Z], &[Z, Z, O, Z], &[H, Z, Z, H]],
        ),
        entry(
            "E_4",
            &[&[O, Z, Z, Z], &[Z, O, Z, Z], &[Z, Z, O, Z], &[Z, Z, Z, O]],
        ),
    ]
}

pub fn catalog(n: usize) -> Option<Vec<CatalogEntry>> {
    match n {
        3 => Some(d3_catalog()),
        4 => Some(d4_catalog()),
        _ => None,
    }
}

/// Generator partition for a conventional label, written in 1-based block
/// notation. Independent of the catalog matrices.
pub fn label_partition(n: usize, label: &str) -> Option<SetPartition> {
    let spec = match (n, label) {
        (3, "E_1") => "(1,2,3)",
        (3, "E_2^1") => "(1,2)",
        (3, "E_2^2") => "(1,3)",
        (3, "E_2^3") => "(2,3)",
        (3, "E_3") => "",
        (4, "E_1") => "(1,2,3,4)",
        (4, "E_2^1") => "(1,2)(3,4)",
        (4, "E_2^2") => "(1,3)(2,4)",
        (4, "E_2^3") => "(1,4)(2,3)",
        (4, "E_2^4") => "(2,3,4)",
        (4, "E_2^5") => "(1,3,4)",
        (4, "E_2^6") => "(1,2,4)",
        (4, "E_2^7") => "(1,2,3)",
        (4, "E_3^1") => "(3,4)",
        (4, "E_3^2") => "(1,2)",
        (4, "E_3^3") => "(2,4)",
        (4, "E_3^4") => "(2,3)",
        (4, "E_3^5") => "(1,3)",
        (4, "E_3^6") => "(1,4)",
        (4, "E_4") => "",
        _ => return None,
    };
    Some(SetPartition::parse_one_based(n, spec).expect("label table is well formed"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
}

/// A displayed meet or join identity among D_4 ideals, with the ideal
/// notation given for each operand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpIdentity {
    pub left: String,
    pub op: LatticeOp,
    pub right: String,
    pub result: String,
    /// `I^k_{..}` notation for left, right and result.
    pub notation: [String; 3],
}

impl OpIdentity {
    /// Parses `"E_2^1 meet E_2^2 = E_1"` (or `∧`/`∨`, `join`) over the D_4
    /// labels, filling in the notation from the label table.
    pub fn parse(text: &str) -> Option<OpIdentity> {
        let (lhs, result) = text.split_once('=')?;
        let words: Vec<&str> = lhs.split_whitespace().collect();
        let [left, op, right] = words[..] else {
            return None;
        };
        let op = match op {
            "meet" | "∧" => LatticeOp::Meet,
            "join" | "∨" => LatticeOp::Join,
            _ => return None,
        };
        let result = result.trim();
        let label =
            |l: &str| label_partition(4, l).map(|p| crate::ideals::IdealHandle::new(p).label());
        Some(OpIdentity {
            left: left.to_string(),
            op,
            right: right.to_string(),
            result: result.to_string(),
            notation: [label(left)?, label(right)?, label(result)?],
        })
    }

    pub fn display(&self) -> String {
        let sym = match self.op {
            LatticeOp::Meet => "∧",
            LatticeOp::Join => "∨",
        };
        format!("<{}> {sym} <{}> = <{}>", self.left, self.right, self.result)
    }
}

pub fn d4_identities() -> Vec<OpIdentity> {
    use LatticeOp::{Join, Meet};
    let id = |left: &str, op, right: &str, result: &str, notation: [&str; 3]| OpIdentity {
        left: left.into(),
        op,
        right: right.into(),
        result: result.into(),
        notation: notation.map(String::from),
    };
    vec![
        id(
            "E_3^1",
            Meet,
            "E_3^2",
            "E_2^1",
            ["I^3_{(3,4)}", "I^3_{(1,2)}", "I^2_{(1,2),(3,4)}"],
        ),
        id(
            "E_3^1",
            Join,
            "E_3^2",
            "E_4",
            ["I^3_{(3,4)}", "I^3_{(1,2)}", "I^4_{(1)(2)(3)(4)}"],
        ),
        id(
            "E_2^1",
            Meet,
            "E_2^2",
            "E_1",
            ["I^2_{(1,2),(3,4)}", "I^2_{(1,3),(2,4)}", "I^1_{(1,2,3,4)}"],
        ),
        id(
            "E_2^1",
            Join,
            "E_2^2",
            "E_4",
            [
                "I^2_{(1,2),(3,4)}",
                "I^2_{(1,3),(2,4)}",
                "I^4_{(1)(2)(3)(4)}",
            ],
        ),
        id(
            "E_2^5",
            Meet,
            "E_2^6",
            "E_1",
            ["I^2_{(1,3,4)}", "I^2_{(1,2,4)}", "I^1_{(1,2,3,4)}"],
        ),
        id(
            "E_2^5",
            Join,
            "E_2^6",
            "E_3^6",
            ["I^2_{(1,3,4)}", "I^2_{(1,2,4)}", "I^3_{(1,4)}"],
        ),
        id(
            "E_2^1",
            Meet,
            "E_3^1",
            "E_2^1",
            ["I^2_{(1,2),(3,4)}", "I^3_{(3,4)}", "I^2_{(1,2),(3,4)}"],
        ),
        id(
            "E_2^1",
            Join,
            "E_3^1",
            "E_3^1",
            ["I^2_{(1,2),(3,4)}", "I^3_{(3,4)}", "I^3_{(3,4)}"],
        ),
    ]
}

/// A parameterized ideal family `E·D_n`, transcribed entry by entry.
#[derive(Debug, Clone, Copy)]
pub struct FamilyFixture {
    pub n: usize,
    pub label: &'static str,
    pub params: usize,
    pub build: fn(&[Rational]) -> Matrix,
}

fn one() -> Rational {
    Rational::one()
}

fn int(v: i64) -> Rational {
    rat(v, 1)
}

fn grid(rows: Vec<Vec<Rational>>) -> Matrix {
    Matrix::from_rows(rows).expect("family rows are well formed")
}

/// `(a, b, c, 1 - a - b - c)` style free row from the first `n - 1` params.
fn free_row(p: &[Rational]) -> Vec<Rational> {
    let mut row = p.to_vec();
    let rest = one() - p.iter().sum::<Rational>();
    row.push(rest);
    row
}

fn uniform3(_: &[Rational]) -> Matrix {
    Matrix::uniform(3)
}

fn uniform4(_: &[Rational]) -> Matrix {
    Matrix::uniform(4)
}

fn d3_e21(p: &[Rational]) -> Matrix {
    let (a, b) = (&p[0], &p[1]);
    let top = free_row(&p[..2]);
    let bottom = vec![
        one() - int(2) * a,
        one() - int(2) * b,
        int(-1) + int(2) * a + int(2) * b,
    ];
    grid(vec![top.clone(), top, bottom])
}

/// `((1-a)/2, (1-b)/2, (a+b)/2)`
fn d3_half(p: &[Rational]) -> Vec<Rational> {
    let (a, b) = (&p[0], &p[1]);
    vec![(one() - a) / int(2), (one() - b) / int(2), (a + b) / int(2)]
}

fn d3_e22(p: &[Rational]) -> Matrix {
    let h = d3_half(p);
    grid(vec![h.clone(), free_row(&p[..2]), h])
}

fn d3_e23(p: &[Rational]) -> Matrix {
    let h = d3_half(p);
    grid(vec![free_row(&p[..2]), h.clone(), h])
}

/// General element of D_n from its top-left `(n-1)×(n-1)` block, row major.
fn general(n: usize, p: &[Rational]) -> Matrix {
    let k = n - 1;
    let mut rows: Vec<Vec<Rational>> = (0..k).map(|i| free_row(&p[i * k..(i + 1) * k])).collect();
    let last: Vec<Rational> = (0..n)
        .map(|j| one() - rows.iter().map(|r| &r[j]).sum::<Rational>())
        .collect();
    rows.push(last);
    grid(rows)
}

fn d3_whole(p: &[Rational]) -> Matrix {
    general(3, p)
}

fn d4_whole(p: &[Rational]) -> Matrix {
    general(4, p)
}

/// `(1/2 - a, 1/2 - b, 1/2 - c, -1/2 + a + b + c)`
fn d4_half(p: &[Rational]) -> Vec<Rational> {
    let h = rat(1, 2);
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    vec![&h - a, &h - b, &h - c, -&h + a + b + c]
}

/// `((1-a)/3, (1-b)/3, (1-c)/3, (a+b+c)/3)`
fn d4_third(p: &[Rational]) -> Vec<Rational> {
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    vec![
        (one() - a) / int(3),
        (one() - b) / int(3),
        (one() - c) / int(3),
        (a + b + c) / int(3),
    ]
}

fn d4_e21(p: &[Rational]) -> Matrix {
    let (r, s) = (free_row(&p[..3]), d4_half(p));
    grid(vec![r.clone(), r, s.clone(), s])
}

fn d4_e22(p: &[Rational]) -> Matrix {
    let (r, s) = (free_row(&p[..3]), d4_half(p));
    grid(vec![r.clone(), s.clone(), r, s])
}

fn d4_e23(p: &[Rational]) -> Matrix {
    let (r, s) = (free_row(&p[..3]), d4_half(p));
    grid(vec![s.clone(), r.clone(), r, s])
}

fn d4_e24(p: &[Rational]) -> Matrix {
    let (r, t) = (free_row(&p[..3]), d4_third(p));
    grid(vec![r, t.clone(), t.clone(), t])
}

fn d4_e25(p: &[Rational]) -> Matrix {
    let (r, t) = (free_row(&p[..3]), d4_third(p));
    grid(vec![t.clone(), r, t.clone(), t])
}

fn d4_e26(p: &[Rational]) -> Matrix {
    let (r, t) = (free_row(&p[..3]), d4_third(p));
    grid(vec![t.clone(), t.clone(), r, t])
}

fn d4_e27(p: &[Rational]) -> Matrix {
    let (r, t) = (free_row(&p[..3]), d4_third(p));
    grid(vec![t.clone(), t.clone(), t, r])
}

/// Rank-3 rows: `r = (a,b,c,1-a-b-c)`, `q = (d,e,f,1-d-e-f)`.
fn rq(p: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    (free_row(&p[..3]), free_row(&p[3..6]))
}

/// `((1-a-d)/2, (1-b-e)/2, (1-c-f)/2, (-1+a+b+c+d+e+f)/2)`
fn d4_pair_half(p: &[Rational]) -> Vec<Rational> {
    let s = |x: &Rational, y: &Rational| (one() - x - y) / int(2);
    let total: Rational = p[..6].iter().sum();
    vec![
        s(&p[0], &p[3]),
        s(&p[1], &p[4]),
        s(&p[2], &p[5]),
        (int(-1) + total) / int(2),
    ]
}

/// `(1-(2a+d), 1-(2b+e), 1-(2c+f), -2+(2a+2b+2c+d+e+f))` with the weights
/// `wr` on the first row and `wq` on the second.
fn d4_weighted(p: &[Rational], wr: i64, wq: i64) -> Vec<Rational> {
    let (wr, wq) = (int(wr), int(wq));
    let x = |i: usize| one() - (&wr * &p[i] + &wq * &p[i + 3]);
    let total = &wr * (&p[0] + &p[1] + &p[2]) + &wq * (&p[3] + &p[4] + &p[5]);
    vec![x(0), x(1), x(2), int(-2) + total]
}

fn d4_e31(p: &[Rational]) -> Matrix {
    let (r, q) = rq(p);
    let h = d4_pair_half(p);
    grid(vec![r, q, h.clone(), h])
}

fn d4_e32(p: &[Rational]) -> Matrix {
    let (r, q) = rq(p);
    grid(vec![r.clone(), r, q, d4_weighted(p, 2, 1)])
}

fn d4_e33(p: &[Rational]) -> Matrix {
    let (r, q) = rq(p);
    let h = d4_pair_half(p);
    grid(vec![r, h.clone(), q, h])
}

fn d4_e34(p: &[Rational]) -> Matrix {
    let (r, q) = rq(p);
    grid(vec![r, q.clone(), q, d4_weighted(p, 1, 2)])
}

fn d4_e35(p: &[Rational]) -> Matrix {
    let (r, q) = rq(p);
    grid(vec![r.clone(), q, r, d4_weighted(p, 2, 1)])
}

fn d4_e36(p: &[Rational]) -> Matrix {
    let (r, q) = rq(p);
    let h = d4_pair_half(p);
    grid(vec![h.clone(), r, q, h])
}

/// Every ideal family of D_3 and D_4. `E_1` families are constant; the
/// full-rank families are the general element of D_n.
pub fn families() -> Vec<FamilyFixture> {
    let f = |n, label, params, build| FamilyFixture {
        n,
        label,
        params,
        build,
    };
    vec![
        f(3, "E_1", 0, uniform3 as fn(&[Rational]) -> Matrix),
        f(3, "E_2^1", 2, d3_e21),
        f(3, "E_2^2", 2, d3_e22),
        f(3, "E_2^3", 2, d3_e23),
        f(3, "E_3", 4, d3_whole),
        f(4, "E_1", 0, uniform4),
        f(4, "E_2^1", 3, d4_e21),
        f(4, "E_2^2", 3, d4_e22),
        f(4, "E_2^3", 3, d4_e23),
        f(4, "E_2^4", 3, d4_e24),
        f(4, "E_2^5", 3, d4_e25),
        f(4, "E_2^6", 3, d4_e26),
        f(4, "E_2^7", 3, d4_e27),
        f(4, "E_3^1", 6, d4_e31),
        f(4, "E_3^2", 6, d4_e32),
        f(4, "E_3^3", 6, d4_e33),
        f(4, "E_3^4", 6, d4_e34),
        f(4, "E_3^5", 6, d4_e35),
        f(4, "E_3^6", 6, d4_e36),
        f(4, "E_4", 9, d4_whole),
    ]
}

/// Deterministic parameter grid restricted to the feasible region (all
/// entries of the instantiated matrix nonnegative). At most `cap` points,
/// spread evenly over the feasible ones.
pub fn feasible_grid(family: &FamilyFixture, cap: usize) -> Vec<Vec<Rational>> {
    if family.params == 0 {
        return vec![Vec::new(); cap.min(10)];
    }
    let values: Vec<Rational> = match family.params {
        0..=3 => [
            (0, 1),
            (1, 12),
            (1, 8),
            (1, 6),
            (1, 4),
            (1, 3),
            (1, 2),
            (2, 3),
            (1, 1),
        ]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect(),
        4..=6 => [(0, 1), (1, 4), (1, 3), (1, 2)]
            .iter()
            .map(|&(p, q)| rat(p, q))
            .collect(),
        _ => [(0, 1), (1, 2)].iter().map(|&(p, q)| rat(p, q)).collect(),
    };
    let mut feasible = Vec::new();
    let mut digits = vec![0usize; family.params];
    loop {
        let point: Vec<Rational> = digits.iter().map(|&d| values[d].clone()).collect();
        let m = (family.build)(&point);
        if m.entries().iter().all(|x| !x.is_negative()) {
            feasible.push(point);
        }
        let Some(pos) = digits.iter().rposition(|&d| d + 1 < values.len()) else {
            break;
        };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
    }
    if feasible.len() <= cap {
        return feasible;
    }
    (0..cap)
        .map(|i| feasible[i * feasible.len() / cap].clone())
        .collect()
}
