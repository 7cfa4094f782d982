//! Fixtures shared by the criterion benches.

use geonet::{
    build_default_overlay_net, build_paper_net, build_paper_pre_net, Net, Point, Triangle,
};

pub fn paper_net() -> Net {
    build_paper_net().expect("paper net builds")
}

pub fn paper_pre_net() -> Net {
    build_paper_pre_net().expect("paper pre-net builds")
}

pub fn overlay_net() -> Net {
    build_default_overlay_net().expect("overlay net builds")
}

pub fn scalene() -> Triangle {
    Triangle::new(
        Point::new(0.0, 0.0),
        Point::new(3.0, 0.2),
        Point::new(1.1, 2.4),
    )
    .expect("non-degenerate")
}
