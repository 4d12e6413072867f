//! Group definition files and the curated built-in catalog.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::perm::{direct_product, Caps, FiniteGroup, Group, Permutation};

pub const CATALOG_VERSION: &str = "builtin-1";

/// On-disk description of one group: a name, a degree and 0-based image
/// arrays for the generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpecFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<usize>,
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Group,
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("builtin generator must be a bijection")
}

fn cyclic_images(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn build(
    name: &str,
    degree: usize,
    gens: Vec<Permutation>,
    order: usize,
    caps: Caps,
) -> Result<CatalogEntry> {
    let group = FiniteGroup::from_generators_capped(degree, gens, caps)?;
    if group.order() != order {
        return Err(Error::OrderMismatch {
            name: name.to_string(),
            expected: order,
            got: group.order(),
        });
    }
    Ok(CatalogEntry {
        name: name.to_string(),
        group,
    })
}

/// Q8 = {±1, ±i, ±j, ±k} acting on itself by left multiplication;
/// point order: 1, -1, i, -i, j, -j, k, -k.
fn quaternion_generators() -> Vec<Permutation> {
    vec![
        perm(vec![2, 3, 1, 0, 6, 7, 5, 4]), // left multiplication by i
        perm(vec![4, 5, 7, 6, 1, 0, 2, 3]), // left multiplication by j
    ]
}

/// SL(2,3) acting on the eight nonzero vectors of F_3^2.
fn sl23_generators() -> Vec<Permutation> {
    let idx = |x: u64, y: u64| -> usize { (3 * x + y - 1) as usize };
    let action = |m: [[u64; 2]; 2]| -> Permutation {
        let mut images = vec![0usize; 8];
        for x in 0..3u64 {
            for y in 0..3u64 {
                if x == 0 && y == 0 {
                    continue;
                }
                let nx = (m[0][0] * x + m[0][1] * y) % 3;
                let ny = (m[1][0] * x + m[1][1] * y) % 3;
                images[idx(x, y)] = idx(nx, ny);
            }
        }
        perm(images)
    };
    vec![action([[1, 1], [0, 1]]), action([[0, 2], [1, 0]])]
}

/// The built-in catalog of small groups. Every entry is validated
/// against its expected order on load.
pub fn builtin_catalog(config: &Config) -> Result<Vec<CatalogEntry>> {
    let caps = config.caps();
    let mut out: Vec<CatalogEntry> = Vec::new();

    for n in 2..=12usize {
        out.push(build(
            &format!("C{n}"),
            n,
            vec![perm(cyclic_images(n))],
            n,
            caps,
        )?);
    }
    out.push(build(
        "V4",
        4,
        vec![perm(vec![1, 0, 2, 3]), perm(vec![0, 1, 3, 2])],
        4,
        caps,
    )?);
    out.push(build(
        "S3",
        3,
        vec![perm(vec![1, 2, 0]), perm(vec![1, 0, 2])],
        6,
        caps,
    )?);
    // Dn here is the dihedral group of order n on n/2 points.
    out.push(build(
        "D8",
        4,
        vec![perm(vec![1, 2, 3, 0]), perm(vec![0, 3, 2, 1])],
        8,
        caps,
    )?);
    out.push(build("Q8", 8, quaternion_generators(), 8, caps)?);
    out.push(build(
        "D10",
        5,
        vec![perm(vec![1, 2, 3, 4, 0]), perm(vec![0, 4, 3, 2, 1])],
        10,
        caps,
    )?);
    out.push(build(
        "D12",
        6,
        vec![perm(vec![1, 2, 3, 4, 5, 0]), perm(vec![0, 5, 4, 3, 2, 1])],
        12,
        caps,
    )?);
    out.push(build(
        "A4",
        4,
        vec![perm(vec![1, 2, 0, 3]), perm(vec![1, 0, 3, 2])],
        12,
        caps,
    )?);
    out.push(build(
        "S4",
        4,
        vec![perm(vec![1, 2, 3, 0]), perm(vec![1, 0, 2, 3])],
        24,
        caps,
    )?);
    out.push(build(
        "A5",
        5,
        vec![perm(vec![1, 2, 0, 3, 4]), perm(vec![1, 2, 3, 4, 0])],
        60,
        caps,
    )?);
    out.push(build(
        "S5",
        5,
        vec![perm(vec![1, 2, 3, 4, 0]), perm(vec![1, 0, 2, 3, 4])],
        120,
        caps,
    )?);
    // ⟨a,b | a^5 = b^4 = 1, b^-1 a b = a^2⟩ as affine maps of F_5:
    // a: x -> x+1, b: x -> 2x.
    out.push(build(
        "F20",
        5,
        vec![perm(vec![1, 2, 3, 4, 0]), perm(vec![0, 2, 4, 1, 3])],
        20,
        caps,
    )?);
    // a: x -> x+1, b: x -> 2x on F_7 (2 has order 3 mod 7).
    out.push(build(
        "C7:C3",
        7,
        vec![
            perm(vec![1, 2, 3, 4, 5, 6, 0]),
            perm(vec![0, 2, 4, 6, 1, 3, 5]),
        ],
        21,
        caps,
    )?);
    out.push(build("SL(2,3)", 8, sl23_generators(), 24, caps)?);

    let a4 = out.iter().find(|e| e.name == "A4").unwrap().group.clone();
    let c2 = out.iter().find(|e| e.name == "C2").unwrap().group.clone();
    let s3 = out.iter().find(|e| e.name == "S3").unwrap().group.clone();
    let c3 = out.iter().find(|e| e.name == "C3").unwrap().group.clone();
    let a4c2 = direct_product(&a4, &c2)?;
    if a4c2.order() != 24 {
        return Err(Error::OrderMismatch {
            name: "A4xC2".into(),
            expected: 24,
            got: a4c2.order(),
        });
    }
    out.push(CatalogEntry {
        name: "A4xC2".into(),
        group: a4c2,
    });
    let s3c3 = direct_product(&s3, &c3)?;
    if s3c3.order() != 18 {
        return Err(Error::OrderMismatch {
            name: "S3xC3".into(),
            expected: 18,
            got: s3c3.order(),
        });
    }
    out.push(CatalogEntry {
        name: "S3xC3".into(),
        group: s3c3,
    });

    for e in &out {
        if e.group.order() > config.max_group_order {
            return Err(Error::CapExceeded {
                what: "group order",
                cap: config.max_group_order,
            });
        }
    }
    Ok(out)
}

/// Parses a catalog file: a JSON array of group specs.
pub fn parse_catalog_file(text: &str, config: &Config) -> Result<Vec<CatalogEntry>> {
    let specs: Vec<GroupSpecFile> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let caps = config.caps();
    let mut out = Vec::new();
    for spec in specs {
        if spec.degree == 0 {
            return Err(Error::Parse(format!(
                "group {:?}: degree must be at least 1",
                spec.name
            )));
        }
        let mut gens = Vec::new();
        for images in spec.generators {
            if images.len() != spec.degree {
                return Err(Error::DegreeMismatch {
                    expected: spec.degree,
                    got: images.len(),
                });
            }
            gens.push(Permutation::from_images(images)?);
        }
        let group = FiniteGroup::from_generators_capped(spec.degree, gens, caps)?;
        if group.order() > config.max_group_order {
            return Err(Error::CapExceeded {
                what: "group order",
                cap: config.max_group_order,
            });
        }
        if let Some(expected) = spec.expected_order {
            if group.order() != expected {
                return Err(Error::OrderMismatch {
                    name: spec.name.clone(),
                    expected,
                    got: group.order(),
                });
            }
        }
        out.push(CatalogEntry {
            name: spec.name,
            group,
        });
    }
    Ok(out)
}

pub fn load_catalog_file(path: &Path, config: &Config) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    parse_catalog_file(&text, config)
}

/// Catalog resolution: explicit config path, then the GROUPLAB_CATALOG
/// environment variable, then the built-in catalog.
pub fn load_catalog(config: &Config) -> Result<Vec<CatalogEntry>> {
    if let Some(path) = &config.catalog {
        return load_catalog_file(path, config);
    }
    if let Ok(path) = std::env::var("GROUPLAB_CATALOG") {
        if !path.is_empty() {
            return load_catalog_file(Path::new(&path), config);
        }
    }
    builtin_catalog(config)
}

pub fn catalog_find<'a>(catalog: &'a [CatalogEntry], name: &str) -> Result<&'a CatalogEntry> {
    catalog
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

/// Serializes a group back into the file format.
pub fn group_to_spec(name: &str, group: &Group) -> GroupSpecFile {
    GroupSpecFile {
        name: name.to_string(),
        degree: group.degree(),
        generators: group
            .generators()
            .iter()
            .map(|p| p.images().to_vec())
            .collect(),
        expected_order: Some(group.order()),
    }
}
