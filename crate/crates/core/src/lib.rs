pub mod affine;
pub mod cli;
pub mod configurations;
pub mod event_parallel;
pub mod event_serial;
pub mod events;
pub mod geometry;
pub mod grid;
pub mod grid_search;
pub mod instance;
pub mod json;
pub mod lp;
pub mod oracle;
pub mod rational;
pub mod solve;
pub mod svg;
pub mod verify;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/instances.md")]
    pub mod instances {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub mod geometry {}
    #[doc = include_str!("../../../book/src/grid.md")]
    pub mod grid {}
    #[doc = include_str!("../../../book/src/lp.md")]
    pub mod lp {}
    #[doc = include_str!("../../../book/src/events.md")]
    pub mod events {}
    #[doc = include_str!("../../../book/src/configurations.md")]
    pub mod configurations {}
    #[doc = include_str!("../../../book/src/checking.md")]
    pub mod checking {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
