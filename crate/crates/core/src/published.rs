//! Published reference rows for the diagonal generating-function stacks.
//!
//! For each catalog triangle whose diagonal closed forms appear in the
//! literature, this table records the numerator rows and denominator
//! shape exactly as printed there (`gf(d) = numerator / (1 - c t)^k`).
//! A few printed rows are known misprints; the engine's computed stack
//! is authoritative, and `verify` reports every disagreement between
//! the two rather than trusting the printed text.
//!
//! Sheffer rows refer to the e.g.f. stack, Riordan rows to the
//! l.g.f./Pascal-product stack.

/// Printed rows for one catalog entry: `(numerator coefficients, c, k)`
/// for d = 0, 1, 2, ...
#[derive(Debug, Clone, Copy)]
pub struct PublishedStack {
    pub name: &'static str,
    /// OEIS id of the numerator-coefficient triangle, when it has one.
    pub numerator_oeis: &'static str,
    pub rows: &'static [(&'static [i64], i64, usize)],
}

pub const PUBLISHED: &[PublishedStack] = &[
    PublishedStack {
        // Second-order Eulerian triangle (with a leading zero column).
        name: "stirling2",
        numerator_oeis: "A008517",
        rows: &[
            (&[1], 1, 1),
            (&[0, 1], 1, 3),
            (&[0, 1, 2], 1, 5),
            (&[0, 1, 8, 6], 1, 7),
            (&[0, 1, 22, 58, 24], 1, 9),
        ],
    },
    PublishedStack {
        // As printed, row d = 2 carries denominator (1 + t)^5, i.e.
        // c = -1: a known sign misprint that verify flags.
        name: "stirling1",
        numerator_oeis: "",
        rows: &[
            (&[1], 1, 1),
            (&[0, 1], 1, 3),
            (&[0, 2, 1], -1, 5),
            (&[0, 6, 8, 1], 1, 7),
            (&[0, 24, 58, 22, 1], 1, 9),
        ],
    },
    PublishedStack {
        // As printed, row d = 4 ends in 24*t^4; the computed row ends in
        // 24*t^3.
        name: "P.S2",
        numerator_oeis: "A201867",
        rows: &[
            (&[1], 1, 1),
            (&[1], 1, 3),
            (&[1, 2], 1, 5),
            (&[1, 8, 6], 1, 7),
            (&[1, 22, 58, 0, 24], 1, 9),
        ],
    },
    PublishedStack {
        // Row d = 3 is printed as "t + 17t - 2t^2 - t^3"; merged
        // literally that is 18t - 2t^2 - t^3.
        name: "charlier",
        numerator_oeis: "A290311",
        rows: &[
            (&[1], 1, 1),
            (&[1], 1, 3),
            (&[1, 3, -1], 1, 5),
            (&[0, 18, -2, -1], 1, 7),
            (&[1, 80, 49, -27, 2], 1, 9),
        ],
    },
    PublishedStack {
        name: "S2[2,1]",
        numerator_oeis: "A290315",
        rows: &[
            (&[1], 2, 1),
            (&[1, 2], 2, 3),
            (&[1, 16, 12], 2, 5),
            (&[1, 66, 284, 120], 2, 7),
            (&[1, 224, 2872, 5952, 1680], 2, 9),
        ],
    },
    PublishedStack {
        // Printed with the same numerators as S2[2,1] for d >= 2 (and
        // 1 + 3t at d = 1); the computed stack differs.
        name: "S2[3,1]",
        numerator_oeis: "A290316",
        rows: &[
            (&[1], 3, 1),
            (&[1, 3], 3, 3),
            (&[1, 16, 12], 3, 5),
            (&[1, 66, 284, 120], 3, 7),
            (&[1, 224, 2872, 5952, 1680], 3, 9),
        ],
    },
    PublishedStack {
        name: "S1phat[2,1]",
        numerator_oeis: "A288875",
        rows: &[
            (&[1], 1, 1),
            (&[1, 1], 1, 3),
            (&[3, 8, 1], 1, 5),
            (&[15, 71, 33, 1], 1, 7),
            (&[105, 744, 718, 112, 1], 1, 9),
        ],
    },
    PublishedStack {
        name: "S1phat[3,1]",
        numerator_oeis: "A290318",
        rows: &[
            (&[1], 1, 1),
            (&[1, 2], 1, 3),
            (&[4, 19, 4], 1, 5),
            (&[28, 222, 147, 8], 1, 7),
            (&[280, 3194, 4128, 887, 16], 1, 9),
        ],
    },
    PublishedStack {
        // Numerators are (d+1) t times the Narayana row polynomials.
        name: "pascal-variant",
        numerator_oeis: "A001263",
        rows: &[
            (&[1], 1, 1),
            (&[0, 2], 1, 3),
            (&[0, 3, 3], 1, 5),
            (&[0, 4, 12, 4], 1, 7),
            (&[0, 5, 30, 30, 5], 1, 9),
        ],
    },
    PublishedStack {
        // Squared binomial coefficients.
        name: "pascal",
        numerator_oeis: "A008459",
        rows: &[
            (&[1], 1, 1),
            (&[1, 1], 1, 3),
            (&[1, 4, 1], 1, 5),
            (&[1, 9, 9, 1], 1, 7),
            (&[1, 16, 36, 16, 1], 1, 9),
        ],
    },
    PublishedStack {
        // (d+1) times the Narayana row polynomials.
        name: "A135278",
        numerator_oeis: "",
        rows: &[
            (&[1], 1, 1),
            (&[2], 1, 3),
            (&[3, 3], 1, 5),
            (&[4, 12, 4], 1, 7),
            (&[5, 30, 30, 5], 1, 9),
        ],
    },
];

/// Published rows for a catalog name, if the literature prints them.
pub fn published_for(name: &str) -> Option<&'static PublishedStack> {
    PUBLISHED.iter().find(|p| p.name == name)
}
