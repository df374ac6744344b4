//! Hand-encoded table rows: relations and point-scheme determinants.

pub struct Row {
    pub ty: &'static str,
    pub names: &'static [&'static str],
    pub rels: &'static str,
    pub det: &'static str,
}

pub const ROWS: &[Row] = &[
    Row { ty: "P1", names: &["al", "be", "ga"], rels: "al xy - be yx, be yz - ga zy, ga zx - al xz", det: "0 xxx" },
    Row { ty: "P2", names: &["al"], rels: "xy - yx + y^2, xz - al zx + al zy, yz - al zy", det: "0 xxx" },
    Row { ty: "P3", names: &[], rels: "xy - yx + y^2 - zx, xz + yz - zx, zy - yz - z^2", det: "0 xxx" },
    Row { ty: "S1", names: &["al", "be", "ga"], rels: "yz - al zy, zx - be xz, xy - ga yx", det: "(1 - al be ga) xyz" },
    Row { ty: "S2", names: &["al", "be"], rels: "zx - al yz, xz - be zy, x^2 + al be y^2", det: "-2 al be xyz" },
    Row { ty: "S3", names: &["al", "be", "ga"], rels: "yx - al z^2, zy - be x^2, xz - ga y^2", det: "-(al be ga - 1) xyz" },
    Row { ty: "S'1", names: &["al", "be"], rels: "xy - be yx, x^2 + yz - al zy, zx - be xz", det: "x(be x^2 + (1 - al be^2) yz)" },
    Row { ty: "S'2", names: &[], rels: "xy - zx, yx - xz, x^2 + y^2 + z^2", det: "-x(x^2 + 2yz)" },
    Row {
        ty: "T1",
        names: &["al", "be", "ga"],
        rels: "xy - yx, xz - zx - be x^2 + (be+ga) yx, yz - zy - al y^2 + (al+ga) xy",
        det: "(al+be+ga) xy(x-y)",
    },
    Row {
        ty: "T2",
        names: &["al", "be", "ga"],
        rels: "x^2 - y^2, xz - zy - be xy + (be+ga) y^2, yz - zx - al yx + (al+ga) x^2",
        det: "-(al+be+ga) xy(x-y)",
    },
    Row { ty: "T3", names: &[], rels: "x^2 - xy + y^2, xz + zy, yx - yz + zx - zy", det: "-xy(x-y)" },
    Row {
        ty: "T'",
        names: &["al", "be"],
        rels: "al x^2 + be(al+be) xy - xz + zx - (al+be) zy, xy - yx - be y^2, 2 be xy - be^2 y^2 + yz - zy",
        det: "(al + 2be) y(x^2 - yz)",
    },
    Row {
        ty: "CC",
        names: &[],
        rels: "-3x^2 - 2xy + xz - zx + 2zy, -xy + yx + y^2, 3x^2 + y^2 + yz - zy",
        det: "3(x^3 - y^2 z)",
    },
    Row {
        ty: "NC1",
        names: &["al"],
        rels: "xy - al yx, (al^3 - 1)/al x^2 + al zy - yz, (al^3 - 1)/al y^2 + al xz - zx",
        det: "-(al^3 - 1)(x^3 + xyz + y^3)",
    },
    Row { ty: "NC2", names: &[], rels: "xz - 2yx + zy, zx - 2xy + yz, y^2 + x^2", det: "2(x^3 + xyz + y^3)" },
    Row { ty: "WL1", names: &["al", "ga"], rels: "al xy - yx, al xz - ga yx - zx, zy - yz + (1+ga) y^2", det: "al x y^2" },
    Row { ty: "WL2", names: &["ga"], rels: "xy - yx, xz - ga yx - zx, zy - yz + (1+ga) y^2", det: "x y^2" },
    Row { ty: "WL3", names: &["ga"], rels: "xy - yx, xz - x^2 - ga yx - zx, xy + zy - yz + (1+ga) y^2", det: "x y^2" },
    Row { ty: "TL1", names: &["al"], rels: "xy - al yx, xz - al^-1 zx, al^-1 zy - al yz + x^2", det: "x^3" },
    Row { ty: "TL2", names: &["be"], rels: "xy - yx - be x^2, xz - zx - yx, zy - yz - be xz + x^2 + y^2", det: "x^3" },
    Row { ty: "TL3", names: &[], rels: "xy + yx, xz + zx - yx, zy - yz - x^2 - y^2", det: "-x^3" },
    // not a cube of a linear form, unlike the other TL rows
    Row { ty: "TL4", names: &[], rels: "xy + yx, xz - zx - x^2, zy - yz + xy + x^2", det: "x(x^2 - 2xy - 2yz)" },
];

/// Parameter choices satisfying every row's nondegeneracy condition.
pub const SAMPLES: &[&[i64]] = &[&[2, 3, 5], &[-1, 4, 7], &[3, -2, 6]];

