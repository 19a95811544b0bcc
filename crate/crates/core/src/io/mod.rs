//! Scenes, the example gallery, and command reports.

pub mod gallery;
pub(crate) mod json;
mod report;
mod scene;

pub use gallery::{gallery, scene as gallery_scene, schonhardt_vertices, NAMES as GALLERY_NAMES};
pub use report::{
    decomposition_from_json, decomposition_to_json, error_json, parse_point, run, Command, Report,
    RunOptions, ORACLE_TOLERANCE,
};
pub use scene::{parse_scene, scene_from_json, scene_from_value, Scene, SceneSource};
