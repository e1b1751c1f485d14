//! Built-in catalog of actions and hypersurfaces.

use super::{ActionDescription, ClassFile, DiagonalHypersurface};
use crate::error::{Error, Result};

const CATALOG: &str = include_str!("../../data/class_presets.json");

/// A catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Action(ActionDescription),
    Hypersurface(DiagonalHypersurface),
}

impl Preset {
    pub fn name(&self) -> &str {
        match self {
            Preset::Action(a) => &a.name,
            Preset::Hypersurface(h) => &h.name,
        }
    }

    /// The fixed-point description; hypersurfaces go through the coordinate-point analysis.
    pub fn action(&self) -> Result<ActionDescription> {
        match self {
            Preset::Action(a) => Ok(a.clone()),
            Preset::Hypersurface(h) => h.to_action(),
        }
    }
}

fn catalog() -> Vec<ClassFile> {
    serde_json::from_str(CATALOG).expect("built-in catalog parses")
}

fn file_name(f: &ClassFile) -> &str {
    match f {
        ClassFile::Action(a) => &a.name,
        ClassFile::Hypersurface(h) => &h.name,
    }
}

pub fn preset_names() -> Vec<String> {
    catalog().iter().map(|f| file_name(f).to_string()).collect()
}

pub fn preset(name: &str) -> Result<Preset> {
    let entry = catalog().into_iter().find(|f| file_name(f) == name).ok_or_else(|| Error::Unknown {
        kind: "preset",
        name: name.to_string(),
        available: preset_names().join(", "),
    })?;
    match entry {
        ClassFile::Action(a) => Ok(Preset::Action(a.build()?)),
        ClassFile::Hypersurface(h) => Ok(Preset::Hypersurface(h.build()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_loads() {
        let names = preset_names();
        assert!(names.len() >= 18);
        for n in &names {
            let p = preset(n).unwrap();
            assert_eq!(p.name(), n);
        }
        match preset("nope") {
            Err(Error::Unknown { available, .. }) => assert!(available.contains("dp1-C30")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c6_cubic_has_no_isolated_description() {
        let p = preset("cubic4-C6").unwrap();
        assert!(p.action().is_err());
    }
}
