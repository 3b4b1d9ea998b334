//! Machine-word 2x2 matrices and Heisenberg monoid elements for the coset
//! enumeration loops. All arithmetic goes through `i128`; results that do
//! not fit back into `i64` are reported as `None`.

/// `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct M2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

fn fit(x: i128) -> Option<i64> {
    i64::try_from(x).ok()
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl M2 {
    pub const IDENTITY: M2 = M2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn diag(x: i64, y: i64) -> M2 {
        M2 { a: x, b: 0, c: 0, d: y }
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn mul(&self, o: &M2) -> Option<M2> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let (e, f, g, h) = (o.a as i128, o.b as i128, o.c as i128, o.d as i128);
        Some(M2 { a: fit(a * e + b * g)?, b: fit(a * f + b * h)?, c: fit(c * e + d * g)?, d: fit(c * f + d * h)? })
    }

    pub fn apply(&self, v: [i64; 2]) -> Option<[i64; 2]> {
        let (x, y) = (v[0] as i128, v[1] as i128);
        Some([
            fit(self.a as i128 * x + self.b as i128 * y)?,
            fit(self.c as i128 * x + self.d as i128 * y)?,
        ])
    }

    /// `adj(self)` so that `self * adj = det * I`.
    pub fn adjugate(&self) -> M2 {
        M2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Left Hermite form `h = x * self`: upper triangular, positive diagonal,
    /// `0 <= h.b < h.d`. Returns `(h, x)`; `None` when singular or too large.
    pub fn hnf_left(&self) -> Option<(M2, M2)> {
        if self.det() == 0 {
            return None;
        }
        let (a, c) = (self.a as i128, self.c as i128);
        let (g, s, t) = ext_gcd(a, c);
        let mut x = [s, t, -c / g, a / g];
        let mut h = [
            g,
            s * self.b as i128 + t * self.d as i128,
            0,
            (-c / g) * self.b as i128 + (a / g) * self.d as i128,
        ];
        if h[3] < 0 {
            h[3] = -h[3];
            x[2] = -x[2];
            x[3] = -x[3];
        }
        let q = h[1].div_euclid(h[3]);
        h[1] -= q * h[3];
        x[0] -= q * x[2];
        x[1] -= q * x[3];
        Some((
            M2 { a: fit(h[0])?, b: fit(h[1])?, c: 0, d: fit(h[3])? },
            M2 { a: fit(x[0])?, b: fit(x[1])?, c: fit(x[2])?, d: fit(x[3])? },
        ))
    }

    /// Smith form data: `(u, d1, d2)` with `u * self * v = diag[d1, d2]`
    /// for some unimodular `v`, `0 < d1 | d2`. Only the row transform is
    /// tracked.
    pub fn snf_left(&self) -> Option<(M2, i64, i64)> {
        if self.det() == 0 {
            return None;
        }
        let mut a = [[self.a as i128, self.b as i128], [self.c as i128, self.d as i128]];
        let mut u = [[1i128, 0], [0, 1]];
        loop {
            let (mut pr, mut pc) = (0, 0);
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if a[i][j] != 0 && (a[pr][pc] == 0 || a[i][j].abs() < a[pr][pc].abs()) {
                    (pr, pc) = (i, j);
                }
            }
            if pr == 1 {
                a.swap(0, 1);
                u.swap(0, 1);
            }
            if pc == 1 {
                for row in a.iter_mut() {
                    row.swap(0, 1);
                }
            }
            let q = a[1][0].div_euclid(a[0][0]);
            for j in 0..2 {
                a[1][j] -= q * a[0][j];
                u[1][j] -= q * u[0][j];
            }
            let q = a[0][1].div_euclid(a[0][0]);
            for row in a.iter_mut() {
                row[1] -= q * row[0];
            }
            if a[1][0] != 0 || a[0][1] != 0 {
                continue;
            }
            if a[1][1] % a[0][0] != 0 {
                for j in 0..2 {
                    a[0][j] += a[1][j];
                    u[0][j] += u[1][j];
                }
                continue;
            }
            break;
        }
        for i in 0..2 {
            if a[i][i] < 0 {
                a[i][i] = -a[i][i];
                u[i] = [-u[i][0], -u[i][1]];
            }
        }
        Some((
            M2 { a: fit(u[0][0])?, b: fit(u[0][1])?, c: fit(u[1][0])?, d: fit(u[1][1])? },
            fit(a[0][0])?,
            fit(a[1][1])?,
        ))
    }
}

/// Heisenberg monoid element `(m, v)`; product `(A,a)(B,b) = (AB, Ab + |B|a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub m: M2,
    pub v: [i64; 2],
}

/// Canonical data of the left coset `Gamma_H * x`: Hermite form entries and
/// the reduced vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftKey {
    pub h: [i64; 3],
    pub w: [i64; 2],
}

impl Elem {
    pub fn new(m: M2, v: [i64; 2]) -> Elem {
        Elem { m, v }
    }

    pub fn mul(&self, o: &Elem) -> Option<Elem> {
        let m = self.m.mul(&o.m)?;
        let av = self.m.apply(o.v)?;
        let det_b = o.m.det();
        let v = [
            fit(av[0] as i128 + det_b * self.v[0] as i128)?,
            fit(av[1] as i128 + det_b * self.v[1] as i128)?,
        ];
        Some(Elem { m, v })
    }

    /// Left-coset canonical form and the element realizing it.
    pub fn left_canonical(&self) -> Option<Elem> {
        let (h, x) = self.m.hnf_left()?;
        let n = self.m.det().abs();
        let w = x.apply(self.v)?;
        let w = [fit((w[0] as i128).rem_euclid(n))?, fit((w[1] as i128).rem_euclid(n))?];
        Some(Elem { m: h, v: w })
    }

    pub fn left_key(&self) -> Option<LeftKey> {
        let c = self.left_canonical()?;
        Some(LeftKey { h: [c.m.a, c.m.b, c.m.d], w: c.v })
    }

    /// `self * other^-1` when it lies in the integral monoid.
    pub fn div_right(&self, other: &Elem) -> Option<Elem> {
        let det_c = other.m.det();
        let adj = other.m.adjugate();
        let num = self.m.mul(&adj)?;
        let (a, b, c, d) = (num.a as i128, num.b as i128, num.c as i128, num.d as i128);
        if a % det_c != 0 || b % det_c != 0 || c % det_c != 0 || d % det_c != 0 {
            return None;
        }
        let m = M2 { a: fit(a / det_c)?, b: fit(b / det_c)?, c: fit(c / det_c)?, d: fit(d / det_c)? };
        let mc = m.apply(other.v)?;
        let x = self.v[0] as i128 - mc[0] as i128;
        let y = self.v[1] as i128 - mc[1] as i128;
        if x % det_c != 0 || y % det_c != 0 {
            return None;
        }
        Some(Elem { m, v: [fit(x / det_c)?, fit(y / det_c)?] })
    }
}
