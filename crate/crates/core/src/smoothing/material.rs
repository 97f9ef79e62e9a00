use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaterialModel {
    PlaneStress,
    PlaneStrain,
    Isotropic3D,
}

/// Isotropic linear elastic material.
///
/// Voigt order is `[xx, yy, xy]` in 2D and `[xx, yy, zz, xy, yz, zx]` in 3D,
/// with engineering shear strains.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub e: f64,
    pub nu: f64,
    pub model: MaterialModel,
}

impl Material {
    pub fn new(e: f64, nu: f64, model: MaterialModel) -> Result<Self> {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "Young's modulus must be positive, got {e}"
            )));
        }
        if !(nu > -1.0 && nu < 0.5) {
            return Err(Error::InvalidInput(format!(
                "Poisson ratio must lie in (-1, 0.5), got {nu}"
            )));
        }
        Ok(Material { e, nu, model })
    }

    pub fn plane_stress(e: f64, nu: f64) -> Result<Self> {
        Self::new(e, nu, MaterialModel::PlaneStress)
    }

    pub fn plane_strain(e: f64, nu: f64) -> Result<Self> {
        Self::new(e, nu, MaterialModel::PlaneStrain)
    }

    pub fn isotropic_3d(e: f64, nu: f64) -> Result<Self> {
        Self::new(e, nu, MaterialModel::Isotropic3D)
    }

    pub fn dim(&self) -> Dim {
        match self.model {
            MaterialModel::Isotropic3D => Dim::Three,
            _ => Dim::Two,
        }
    }

    pub fn shear_modulus(&self) -> f64 {
        self.e / (2.0 * (1.0 + self.nu))
    }

    pub fn lame_lambda(&self) -> f64 {
        self.e * self.nu / ((1.0 + self.nu) * (1.0 - 2.0 * self.nu))
    }

    /// Constitutive matrix in Voigt form.
    pub fn c(&self) -> DMatrix<f64> {
        let (e, nu) = (self.e, self.nu);
        match self.model {
            MaterialModel::PlaneStress => {
                let k = e / (1.0 - nu * nu);
                DMatrix::from_row_slice(
                    3,
                    3,
                    &[
                        k,
                        k * nu,
                        0.0,
                        k * nu,
                        k,
                        0.0,
                        0.0,
                        0.0,
                        k * (1.0 - nu) / 2.0,
                    ],
                )
            }
            MaterialModel::PlaneStrain => {
                let k = e / ((1.0 + nu) * (1.0 - 2.0 * nu));
                DMatrix::from_row_slice(
                    3,
                    3,
                    &[
                        k * (1.0 - nu),
                        k * nu,
                        0.0,
                        k * nu,
                        k * (1.0 - nu),
                        0.0,
                        0.0,
                        0.0,
                        k * (1.0 - 2.0 * nu) / 2.0,
                    ],
                )
            }
            MaterialModel::Isotropic3D => {
                let (l, g) = (self.lame_lambda(), self.shear_modulus());
                let mut c = DMatrix::zeros(6, 6);
                for i in 0..3 {
                    for j in 0..3 {
                        c[(i, j)] = l;
                    }
                    c[(i, i)] += 2.0 * g;
                    c[(i + 3, i + 3)] = g;
                }
                c
            }
        }
    }
}
