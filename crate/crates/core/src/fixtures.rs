//! Shipped input files, embedded so library code and tests agree on them.

pub const ZIGZAG: &str = include_str!("../fixtures/zigzag.quiver");
pub const ARROWLESS: &str = include_str!("../fixtures/arrowless.quiver");
pub const ONE_LOOP: &str = include_str!("../fixtures/one_loop.quiver");
pub const A2_LINE: &str = include_str!("../fixtures/a2_line.quiver");

pub const D_EXAMPLE: &str = include_str!("../fixtures/d_example.msg");
pub const RECT_BAND: &str = include_str!("../fixtures/rect_band.msg");
pub const FAT_H: &str = include_str!("../fixtures/fat_h.msg");
pub const TRIVIAL: &str = include_str!("../fixtures/trivial.msg");

pub const A1: &str = include_str!("../fixtures/a1.mat");
pub const A2: &str = include_str!("../fixtures/a2.mat");
pub const B2: &str = include_str!("../fixtures/b2.mat");
pub const G2: &str = include_str!("../fixtures/g2.mat");
pub const AFFINE_A1: &str = include_str!("../fixtures/affine_a1.mat");

/// Every fixture by its file name.
pub const ALL: &[(&str, &str)] = &[
    ("zigzag.quiver", ZIGZAG),
    ("arrowless.quiver", ARROWLESS),
    ("one_loop.quiver", ONE_LOOP),
    ("a2_line.quiver", A2_LINE),
    ("d_example.msg", D_EXAMPLE),
    ("rect_band.msg", RECT_BAND),
    ("fat_h.msg", FAT_H),
    ("trivial.msg", TRIVIAL),
    ("a1.mat", A1),
    ("a2.mat", A2),
    ("b2.mat", B2),
    ("g2.mat", G2),
    ("affine_a1.mat", AFFINE_A1),
];

pub fn by_name(name: &str) -> Option<&'static str> {
    let stem = name.rsplit('/').next().unwrap_or(name);
    ALL.iter()
        .find(|(n, _)| *n == stem || n.split('.').next() == Some(stem))
        .map(|(_, t)| *t)
}
