//! Closed forms for the 35 triples, written to mirror the displayed formulas
//! factor by factor. Polynomials are listed constant term first.

use crate::enumerate::FilterSpec;
use crate::recurrences::{case118, case242};
use crate::series::expr::{cat, int, own, p, s4, x, xp, Builder, Expr};

use super::{Auxiliary, CaseSpec};

fn flt(s: &str) -> FilterSpec {
    s.parse().expect("static filter")
}

fn aux(name: &'static str, e: Expr, filter: &str) -> Auxiliary {
    Auxiliary::new(name, e.into(), flt(filter))
}

/// `1 - x`
fn u() -> Expr {
    p(&[1, -1])
}

/// `1 - 2x`
fn v() -> Expr {
    p(&[1, -2])
}

/// `F - 1`
fn fm1() -> Expr {
    own() - int(1)
}

fn case(id: u32, triple: &str, main: Expr) -> CaseSpec {
    CaseSpec::new(id, triple, main.into())
}

pub(super) fn all() -> Vec<CaseSpec> {
    vec![
        case77(),
        case90(),
        case103(),
        case106(),
        case118(),
        case130(),
        case(
            131,
            "2134,1423,2341",
            p(&[1, -4, 7, -6, 1, 2]) * cat() / (v() * u().pow(3)) - x() * p(&[1, -2, 1, -1, 2]) / (v() * u().pow(4)),
        ),
        case(133, "1342,2143,2314", v() * p(&[1, -3, 1]) / p(&[1, -6, 11, -7])),
        case159(),
        case162(),
        case163(),
        case(
            164,
            "1432,2431,3214",
            (u().pow(4) * v() * cat() - x() * p(&[1, -4, 6, -5])) / (u() * v() * p(&[1, -4, 5, -3])),
        ),
        case(
            165,
            "1342,2314,3421",
            (v() * u().pow(4) * cat() - x() * p(&[1, -4, 6, -5, 1])) / (u().pow(4) * p(&[1, -3, 1])),
        ),
        case(
            175,
            "1423,2341,3142",
            p(&[1, -6, 12, -11, 5]) / p(&[1, -7, 17, -20, 12, -2]),
        ),
        case(176, "1342,2431,3412", form176()),
        case178(),
        case182(),
        case(
            190,
            "3142,2314,1423",
            v() * p(&[1, -3, 1]).pow(2) / (u() * p(&[1, -8, 22, -24, 8, -1])),
        ),
        case(
            192,
            "1243,1342,2431",
            (p(&[1, -5, 9, -6]) * (cat() - int(1)) - xp(3)) / (x() * v() * u().pow(2)),
        ),
        case194(),
        case(
            197,
            "2413,3241,2134",
            (p(&[1, -5, 9, -7, 1]) + p(&[1, -5, 9, -9, 3]) * s4())
                / (u() * (p(&[1, -6, 12, -11, 3]) + p(&[1, -4, 6, -5, 1]) * s4())),
        ),
        case198(),
        case(
            199,
            "1243,1423,2341",
            (x() * p(&[-1, 1]).pow(2) * p(&[-1, 2]) * cat() + p(&[1, -5, 9, -7, 3]))
                / ((x() * cat() - p(&[-1, 1]).pow(2)) * p(&[-1, 1]).pow(2) * p(&[-1, 2])),
        ),
        case204(),
        case(
            208,
            "1234,1342,3124",
            (v() * p(&[1, -6, 12, -10, 2]) - xp(2) * p(&[1, -2, 2]).pow(2) * cat()) / p(&[1, -9, 30, -49, 38, -8, -4]),
        ),
        case214(),
        case(
            217,
            "4132,1342,1243",
            (u() * p(&[1, -3, 1]) * s4() - p(&[1, -8, 20, -15, 4])) / (int(2) * x() * u() * p(&[1, -5, 4, -1])),
        ),
        case(
            219,
            "1342,2413,3412",
            int(1) + x() * u().pow(2) * v() / (p(&[1, -3, 1]) * p(&[1, -2, 2]) - x() * v() * u() * cat()),
        ),
        case(
            220,
            "2431,2314,3142",
            int(1)
                + x() * u().pow(2) * v() / (p(&[1, -3]) * u().pow(3) - x() * v() * p(&[1, -1, 1]) * (cat() - int(1))),
        ),
        case(
            222,
            "3412,3421,1342",
            (p(&[2, -11, 13, -6]) + u() * x() * p(&[1, -6, 4]) / s4()) / (int(2) * p(&[1, -6, 8, -4])),
        ),
        case(
            223,
            "1243,1342,2413",
            v() * (v() - p(&[1, -8, 20, -20, 4]).sqrt()) / (int(2) * x() * p(&[1, -4, 5, -1])),
        ),
        case(
            224,
            "4132,1342,1423",
            (p(&[2, -10, 9, -3]) + x() * u() * p(&[2, -1]) * s4()) / (int(2) * p(&[1, -5, 4, 0, -1])),
        ),
        case226(),
        case(
            232,
            "1234,1342,2341",
            (p(&[1, -4, 2]) - p(&[1, -6, 9]) * cat()) / (x() * p(&[1, -4])),
        ),
        case242(),
    ]
}

fn case77() -> CaseSpec {
    let h = xp(2) * p(&[1, -4, 5]) / v().pow(3);
    let j = xp(3) * p(&[1, -4, 9, -11, 6, -2]) / (u().pow(5) * v().pow(2));
    let g2 = xp(2) * p(&[1, -8, 29, -58, 66, -43, 15, -1]) / (v().pow(3) * u().pow(5));
    case(
        77,
        "1243,2314,3412",
        p(&[1, -11, 53, -145, 248, -274, 192, -80, 17]) / (u().pow(6) * v().pow(3)),
    )
    .with_aux(aux("H", h.clone(), "start1=n-1"))
    .with_aux(aux("J", j.clone(), "lrmax=2,start1<=n-2"))
    .with_aux(aux("G2", g2, "lrmax=2").alternate((h + j).into()))
    .with_aux(aux("G3", xp(3) * u().pow(2) / v().pow(3), "lrmax=3"))
}

fn case90() -> CaseSpec {
    case(
        90,
        "1243,2431,3412",
        p(&[1, -11, 51, -129, 195, -183, 104, -30, 3]) / (u().pow(4) * v() * p(&[1, -3, 1]).pow(2)),
    )
    .with_aux(aux(
        "H",
        xp(3) * v() / p(&[1, -3, 1]).pow(2),
        "lrmax>=2,lrmax-top=1,last-is-max=0",
    ))
    .with_aux(aux(
        "L",
        xp(3) * p(&[1, -2, 2, -3, 1]) / (u().pow(4) * p(&[1, -3, 1])),
        "lrmax>=2,final-gap=1",
    ))
}

fn case103() -> CaseSpec {
    let t = x() / u();
    let outer = int(1) / p(&[1, -1, 0, -1]) - p(&[1, 1, 1, 2, 2]);
    case(
        103,
        "1423,2341,3124",
        p(&[1, -9, 35, -77, 107, -97, 55, -17, 1]) / (u().pow(5) * p(&[1, -4, 5, -3])) * cat(),
    )
    .with_aux(aux("G2", (x() * cat() - x()) * own(), "lrmax=2"))
    .with_aux(aux("G3", xp(3) / u().pow(5), "lrmax=3"))
    .with_aux(aux("G4+", outer.compose(t), "lrmax>=4"))
}

fn case106() -> CaseSpec {
    case(
        106,
        "1342,2143,3412",
        v() * p(&[1, -6, 12, -9, 4]) / (u().pow(3) * p(&[1, -3]) * p(&[1, -3, 1])),
    )
    .with_aux(aux(
        "H",
        xp(2) * (xp(2) + u().pow(3) * own()) / u().pow(4),
        "start1=n-1",
    ))
    .with_aux(aux("J", xp(2) * v() / (u() * p(&[1, -3])), "start2=n"))
}

fn case118() -> CaseSpec {
    let j = xp(2) * p(&[1, -7, 22, -35, 29, -13]) / (u().pow(4) * v().pow(3));
    case(
        118,
        "1423,1234,3412",
        p(&[1, -12, 64, -198, 393, -521, 463, -269, 95, -17]) / (u().pow(7) * v().pow(3)),
    )
    .with_aux(aux("J", j, "rlmax>=2,rlmax-suffix=1").alternate(Builder::Native {
        name: "J-recurrence",
        f: case118::j_sum_stable,
    }))
}

fn case130() -> CaseSpec {
    case(
        130,
        "1342,3124,3412",
        p(&[1, -9, 32, -58, 58, -33, 8]) / (u().pow(4) * v() * p(&[1, -4, 2])),
    )
    .with_aux(aux("H", xp(2) * p(&[1, -3, 1]) / (u() * p(&[1, -4, 2])), "start2=n"))
}

fn case159() -> CaseSpec {
    let g2 = xp(3) * p(&[1, -4, 3, 1]) / (u().pow(2) * v() * p(&[1, -3]) * p(&[1, -3, 1])) + xp(2) * own() / u();
    case(
        159,
        "1243,1342,3412",
        p(&[1, -11, 48, -104, 115, -61, 13]) / (u() * v() * p(&[1, -3]) * p(&[1, -3, 1]).pow(2)),
    )
    .with_aux(aux("J", xp(2) * v() / (u() * p(&[1, -3])), "start2=n"))
    .with_aux(aux("G2", g2.clone(), "lrmax=2"))
    .with_aux(aux("G3", x() / u() * g2, "lrmax=3"))
}

fn case162() -> CaseSpec {
    let g2 = xp(6) / (v().pow(2) * u().pow(4)) + xp(2) * p(&[1, -3, 4, -1]) * own() / (v() * u().pow(3));
    let g3 = x() / u() * g2.clone() + xp(4) * own() / u().pow(3) + xp(5) / (u().pow(4) * v());
    case(
        162,
        "3412,1423,2341",
        p(&[1, -7, 18, -21, 11]) / (v() * p(&[1, -6, 12, -11, 3])),
    )
    .with_aux(aux("G2", g2, "lrmax=2"))
    .with_aux(aux("G3", g3, "lrmax=3"))
}

fn case163() -> CaseSpec {
    case(
        163,
        "1342,2314,3412",
        (p(&[1, -3, 3]).pow(2) * cat() - x() * u() * p(&[1, -3, 5, -4])) / (u().pow(5) * v()),
    )
    .with_aux(aux(
        "H",
        x() * (p(&[1, -4, 7, -7, 4]) * cat() + p(&[-1, 4, -8, 9, -4])) / (u().pow(4) * v()),
        "lrmax=2",
    ))
}

/// The same displayed formula serves both 176 and 178.
fn form176() -> Expr {
    (u().pow(2) * p(&[1, -4, 6, -5, 1]) * cat() + p(&[-1, 6, -14, 15, -8, 1]))
        / (x() * p(&[1, -3, 1]) * p(&[1, -1, 0, 1]))
}

/// Solved from the functional equation
/// `F = 1 - x + 2xF + H + x³(F-1)/(1-2x) + x³C⁴` with `H` below.
fn case178() -> CaseSpec {
    let c1 = cat() - int(1);
    let h = x() * c1.clone().pow(2) + xp(4) * cat().pow(5) * c1.clone();
    let h_solved = (xp(2) * c1 + xp(5) * cat().pow(5)) / (u() - x() * cat());
    let num = u() + h.clone() - xp(3) / v() + xp(3) * cat().pow(4);
    let den = v() - xp(3) / v();
    case(178, "1342,2314,2431", num / den)
        .with_aux(aux("H", h.clone(), "lrmax=2,start1<=n-2").alternate(h_solved.into()))
        .with_aux(aux("G2", x() * fm1() + h, "lrmax=2"))
}

fn case182() -> CaseSpec {
    let g2 = x() * cat() - x() + xp(2) * cat() * fm1() + xp(3) * cat().pow(2) * fm1() / u();
    case(
        182,
        "2314,2431,3412",
        (int(1) + xp(2) * u() * cat().pow(4)) / (int(1) - x() * v() * cat().pow(2)),
    )
    .with_aux(aux("H", x() * cat() - x(), "start1=n-1"))
    .with_aux(aux("G2", g2, "lrmax=2"))
}

fn case194() -> CaseSpec {
    let plus = (p(&[1, -4, 5, -2, 1]) * cat() + p(&[-1, 3, -2, -1])) / v().pow(2);
    case(
        194,
        "3124,4123,1243",
        (p(&[1, -5, 9, -8, 4]) * cat() - p(&[1, -5, 9, -6, 1])) / (x() * v().pow(2)),
    )
    .with_aux(aux("A-", x() * cat() * fm1(), "initial-descent=1"))
    .with_aux(Auxiliary::new(
        "A+",
        plus.into(),
        flt("initial-descent=0").with_from_len(2),
    ))
}

fn case198() -> CaseSpec {
    let h =
        x() * p(&[-1, 5, -7, 1]) / (u() * v()) - x() * p(&[-1, 6, -9, 3]) * cat() / u().pow(2) + xp(2) * cat() * own();
    case(
        198,
        "1234,1423,2341",
        (p(&[1, -7, 18, -19, 6]) * cat() - p(&[1, -6, 12, -8, 1])) / (xp(2) * u() * v()),
    )
    .with_aux(aux("H1", xp(2) * fm1(), "start1=n-2,start2=n"))
    .with_aux(aux("H", h.clone(), "start2=n,start1<=n-2"))
    .with_aux(aux("G2", h / x(), "lrmax=2"))
    .with_aux(aux(
        "H20",
        xp(4) * cat() + xp(4) * (cat() - int(1)) / u(),
        "start1=n-3,start2=n,rlmax=3",
    ))
    .with_aux(aux(
        "H30",
        xp(5) * cat() + xp(5) * (cat() - int(1)) / u() + xp(5) * (cat() - int(1)) / u().pow(2),
        "start1=n-4,start2=n,rlmax=4",
    ))
}

fn case204() -> CaseSpec {
    let g2 = x() * cat() * fm1();
    let g3 = xp(2) * fm1() + x() / u() * (g2.clone() - x() * fm1()) + xp(3) / u().pow(2) * (g2.clone() + x());
    case(
        204,
        "1243,1423,2314",
        (x() * p(&[1, -2, 2]) * cat() - p(&[1, -3, 3])) / (x() * p(&[1, -2, 2]) * cat() - u() * p(&[1, -3, 3])),
    )
    .with_aux(aux("H1", xp(2) * fm1(), "start1=n-2,start2=n"))
    .with_aux(aux("H2", xp(3) * cat() * fm1(), "start1=n-3,start2=n"))
    .with_aux(aux("H", xp(2) * cat() * fm1(), "start2=n,start1<=n-2"))
    .with_aux(aux("G2", g2, "lrmax=2"))
    .with_aux(aux("G3", g3, "lrmax=3"))
}

fn case214() -> CaseSpec {
    let c2 = cat().pow(2);
    let g2 = xp(2) * own() * cat() + xp(3) * c2.clone() * fm1() / v() + xp(3) * c2.clone() / v()
        - xp(3) * c2 / u().pow(2)
        + xp(3) * cat() / (u() * (u() - x() * cat()));
    case(
        214,
        "1342,2341,3412",
        v() * (p(&[1, -5, 9, -6]) * s4() - p(&[1, -9, 29, -38, 18]))
            / (int(2) * u().pow(2) * x() * p(&[1, -7, 14, -9])),
    )
    .with_aux(aux("G2", g2.clone(), "lrmax=2"))
    .with_aux(aux("G3", x() * cat() * g2, "lrmax=3"))
}

fn case226() -> CaseSpec {
    let k = v() / p(&[1, -3, 1]);
    let inner = x() + xp(2) * (k - int(1)) / u();
    case(
        226,
        "1342,2143,2413",
        (p(&[1, -3, 1]) - (p(&[1, -7, 13, -8]) * p(&[1, -3, 1])).sqrt()) / (int(2) * x() * u() * v()),
    )
    .with_aux(aux("Hsum", x() * fm1() * cat().compose(inner), "lrmax>=2,lrmax-top=1"))
}

fn case242() -> CaseSpec {
    CaseSpec::new(
        242,
        "2341,2431,3241",
        Builder::Native {
            name: "fixed-point",
            f: case242::fixed_point,
        },
    )
    .alternate(Builder::Native {
        name: "binomial-sum",
        f: case242::sum_series,
    })
}
