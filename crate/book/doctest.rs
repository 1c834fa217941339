// mdbook cannot run Rust listings as tests, so every chapter is pulled in
// as the doc comment of an empty module and `cargo test --doc` runs them.
// A failing listing shows up under the module named after its chapter.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/maps.md")]
pub mod maps {}
#[doc = include_str!("src/woods.md")]
pub mod woods {}
#[doc = include_str!("src/cover.md")]
pub mod cover {}
#[doc = include_str!("src/drawings.md")]
pub mod drawings {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
