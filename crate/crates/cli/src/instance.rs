use factorlab_core::{AbelianGroup, BlockModel, FreeClasses, GroupElement, LocalComponent};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// On-disk description of a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub class_group: Vec<u32>,
    #[serde(default)]
    pub components: Vec<ComponentSpec>,
    pub free_classes: FreeClassesSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub rank: usize,
    pub unit_group: Vec<u32>,
    pub unit_class_images: Vec<Vec<u32>>,
    pub prime_classes: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FreeClassesSpec {
    Keyword(AllKeyword),
    Listed(Vec<Vec<u32>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AllKeyword {
    All,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_model(&self) -> Result<BlockModel, CliError> {
        let group = AbelianGroup::from_invariants(&self.class_group)?;
        if group.invariant_factors() != self.class_group.as_slice() {
            return Err(CliError::Field(format!(
                "class_group {:?} is not in invariant-factor form; use {:?}",
                self.class_group,
                group.invariant_factors()
            )));
        }
        let element = |field: &str, r: &[u32]| -> Result<GroupElement, CliError> {
            let x = GroupElement::new(r.to_vec());
            group
                .check(&x)
                .map_err(|e| CliError::Field(format!("{field}: {e}")))?;
            Ok(x)
        };
        let mut components = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            if c.rank == 0 {
                return Err(CliError::Field(format!(
                    "components[{i}].rank must be at least 1"
                )));
            }
            let unit_group = AbelianGroup::from_invariants(&c.unit_group)?;
            let images = c
                .unit_class_images
                .iter()
                .map(|r| element(&format!("components[{i}].unit_class_images"), r))
                .collect::<Result<Vec<_>, _>>()?;
            let primes = c
                .prime_classes
                .iter()
                .map(|r| element(&format!("components[{i}].prime_classes"), r))
                .collect::<Result<Vec<_>, _>>()?;
            components.push(LocalComponent::new(c.rank, unit_group, images, primes));
        }
        let free = match &self.free_classes {
            FreeClassesSpec::Keyword(AllKeyword::All) => FreeClasses::All,
            FreeClassesSpec::Listed(list) => FreeClasses::Listed(
                list.iter()
                    .map(|r| element("free_classes", r))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(BlockModel::new(group, components, free)?)
    }

    /// The description of an existing model (one free prime per class).
    pub fn from_model(model: &BlockModel) -> Self {
        let res = |g: &GroupElement| g.residues().to_vec();
        let free_classes = if model.every_class_has_prime() {
            FreeClassesSpec::Keyword(AllKeyword::All)
        } else {
            FreeClassesSpec::Listed(model.free_classes().iter().map(res).collect())
        };
        InstanceFile {
            class_group: model.group().invariant_factors().to_vec(),
            components: model
                .components()
                .iter()
                .map(|c| ComponentSpec {
                    rank: c.rank(),
                    unit_group: c.unit_group().invariant_factors().to_vec(),
                    unit_class_images: c.unit_class_images().iter().map(res).collect(),
                    prime_classes: c.prime_classes().iter().map(res).collect(),
                })
                .collect(),
            free_classes,
        }
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<BlockModel, CliError> {
    InstanceFile::parse(text)?.to_model()
}
