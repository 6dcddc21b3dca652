//! Checking the subspaces recorded by a decomposition against the equations
//! they are supposed to satisfy.

use serde::{Deserialize, Serialize};

use super::biinjective::BiinjectiveTrace;
use super::cartesian::SplitTrace;
use crate::error::Result;
use crate::relation::LinearRelation;
use crate::space::BilinearSpace;
use crate::subspace::{is_direct_sum, Subspace};

/// Everything a decomposition chose along the way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTrace {
    pub split: SplitTrace,
    /// Written in the canonical bases of `split.x_b` and `split.y_b`.
    pub biinjective: BiinjectiveTrace,
}

/// Collects the names of failed checks.
#[derive(Default)]
struct Checks {
    failed: Vec<String>,
}

impl Checks {
    fn expect(&mut self, name: &str, ok: bool) {
        if !ok {
            self.failed.push(name.to_string());
        }
    }

    fn expect_res(&mut self, name: &str, ok: Result<bool>) {
        self.expect(name, ok.unwrap_or(false));
    }
}

fn orthogonal(space: &BilinearSpace, a: &Subspace, b: &Subspace) -> bool {
    let (va, vb) = (a.vectors(), b.vectors());
    a.ambient_dim() == space.dim() && b.ambient_dim() == space.dim() && space.gram(&va, &vb).is_zero()
}

fn isotropic(space: &BilinearSpace, a: &Subspace) -> bool {
    orthogonal(space, a, a)
}

fn symplectic(space: &BilinearSpace, a: &Subspace) -> bool {
    space.is_symplectic_subspace(a).unwrap_or(false)
}

fn sum(parts: &[&Subspace]) -> Result<Subspace> {
    let n = parts.first().map_or(0, |p| p.ambient_dim());
    Subspace::sum_all(n, parts.iter().copied())
}

impl StageTrace {
    /// Names of every failed check; empty when the trace is consistent with `f`.
    pub fn failures(&self, f: &LinearRelation) -> Vec<String> {
        let mut c = Checks::default();
        check_split(&mut c, &self.split, f);
        if c.failed.is_empty() {
            match f.restrict_to_bases(self.split.x_b.basis(), self.split.y_b.basis()) {
                Ok(g) => check_biinjective(&mut c, &self.biinjective, &g),
                Err(_) => c.expect("f_B restricts to X_B × Y_B", false),
            }
        }
        c.failed
    }

    pub fn verify(&self, f: &LinearRelation) -> bool {
        self.failures(f).is_empty()
    }
}

fn check_split(c: &mut Checks, t: &SplitTrace, f: &LinearRelation) {
    let (x, y) = (f.target(), f.source());
    let f0 = f.indeterminacy_f0();
    let zf = f.kernel_0f();
    c.expect("f0 ∩ R_X", f0.intersect(&x.radical()).ok().as_ref() == Some(&t.f0_radical));
    c.expect("0f ∩ R_Y", zf.intersect(&y.radical()).ok().as_ref() == Some(&t.kernel_radical));
    c.expect("f0 = X_0 ⊕ (f0 ∩ R_X)", is_direct_sum(&[&t.x_0, &t.f0_radical], &f0));
    c.expect("0f = Y_0 ⊕ (0f ∩ R_Y)", is_direct_sum(&[&t.y_0, &t.kernel_radical], &zf));
    c.expect(
        "X = X_0 ⊕ X_0* ⊕ (f0 ∩ R_X) ⊕ X_B",
        is_direct_sum(&[&t.x_0, &t.x_0_dual, &t.f0_radical, &t.x_b], &Subspace::full(x.dim())),
    );
    c.expect(
        "Y = Y_0 ⊕ Y_0* ⊕ (0f ∩ R_Y) ⊕ Y_B",
        is_direct_sum(&[&t.y_0, &t.y_0_dual, &t.kernel_radical, &t.y_b], &Subspace::full(y.dim())),
    );
    c.expect("X_0* isotropic", isotropic(x, &t.x_0_dual));
    c.expect("Y_0* isotropic", isotropic(y, &t.y_0_dual));
    c.expect("X_0 ⊕ X_0* symplectic", sum(&[&t.x_0, &t.x_0_dual]).is_ok_and(|s| symplectic(x, &s)));
    c.expect("Y_0 ⊕ Y_0* symplectic", sum(&[&t.y_0, &t.y_0_dual]).is_ok_and(|s| symplectic(y, &s)));
    c.expect("X_B ⊥ X_0*", orthogonal(x, &t.x_b, &t.x_0_dual));
    c.expect("Y_B ⊥ Y_0*", orthogonal(y, &t.y_b, &t.y_0_dual));
    c.expect_res("f0^⊥ = f0 ⊕ X_B", x.orthogonal(&f0).map(|o| is_direct_sum(&[&f0, &t.x_b], &o)));
    c.expect_res("(0f)^⊥ = 0f ⊕ Y_B", y.orthogonal(&zf).map(|o| is_direct_sum(&[&zf, &t.y_b], &o)));

    let dom = f.domain_xf();
    let img = f.image_fy();
    c.expect_res("Xf = 0f ⊕ (Xf ∩ Y_B)", dom.intersect(&t.y_b).map(|d| is_direct_sum(&[&zf, &d], &dom)));
    c.expect_res("fY = f0 ⊕ (fY ∩ X_B)", img.intersect(&t.x_b).map(|d| is_direct_sum(&[&f0, &d], &img)));

    let x_c = sum(&[&t.x_0, &t.x_0_dual, &t.f0_radical]);
    let y_c = sum(&[&t.y_0, &t.y_0_dual, &t.kernel_radical]);
    if let (Ok(x_c), Ok(y_c)) = (x_c, y_c) {
        let cart = x_c.product(&y_c);
        let bi = t.x_b.product(&t.y_b);
        c.expect(
            "X × Y = [X_C × Y_C] ⊕ [X_B × Y_B]",
            is_direct_sum(&[&cart, &bi], &Subspace::full(f.target_dim() + f.source_dim())),
        );
        c.expect("f_C = f ∩ (X_C × Y_C)", f.graph().intersect(&cart).ok().as_ref() == Some(&t.f_c));
    } else {
        c.expect("X_C, Y_C well formed", false);
    }
    c.expect("f_C = f0 × 0f", t.f_c == f0.product(&zf));
    c.expect(
        "f_B = f ∩ (X_B × Y_B)",
        f.graph().intersect(&t.x_b.product(&t.y_b)).ok().as_ref() == Some(&t.f_b),
    );
    c.expect("f = f_C ⊕ f_B", is_direct_sum(&[&t.f_c, &t.f_b], f.graph()));
    let m = f.target_dim();
    c.expect("f_B biinjective", {
        let fb0 = t.f_b.intersect(&Subspace::full(m).product(&Subspace::zero(y.dim())));
        let zfb = t.f_b.intersect(&Subspace::zero(m).product(&Subspace::full(y.dim())));
        matches!((fb0, zfb), (Ok(a), Ok(b)) if a.is_zero() && b.is_zero())
    });
}

fn check_biinjective(c: &mut Checks, t: &BiinjectiveTrace, g: &LinearRelation) {
    let (x, y) = (g.target(), g.source());
    let (r_x, r_y) = (x.radical(), y.radical());
    let dom = g.domain_xf();
    let img = g.image_fy();
    let image = |s: &Subspace| g.image_of(s).ok();
    let preimage = |s: &Subspace| g.preimage_of(s).ok();

    c.expect("g biinjective", g.is_biinjective());
    let dom_r = dom.intersect(&r_y).ok();
    let img_r = img.intersect(&r_x).ok();
    c.expect(
        "X_R = g(Xg ∩ R_Y) ∩ R_X",
        dom_r
            .as_ref()
            .and_then(image)
            .and_then(|s| s.intersect(&r_x).ok())
            .as_ref()
            == Some(&t.x_r),
    );
    c.expect("Y_R = g⁻¹(X_R)", preimage(&t.x_r).as_ref() == Some(&t.y_r));
    c.expect("X_Ig = g⁻¹(X_I)", preimage(&t.x_i).as_ref() == Some(&t.x_ig));
    c.expect("gY_I = g(Y_I)", image(&t.y_i).as_ref() == Some(&t.g_y_i));
    c.expect("X_L = g(Y_L)", image(&t.y_l).as_ref() == Some(&t.x_l));
    c.expect("X_S = g(Y_S)", image(&t.y_s).as_ref() == Some(&t.x_s));
    c.expect("Xg ∩ R_Y = Y_R ⊕ Y_I", dom_r.is_some_and(|d| is_direct_sum(&[&t.y_r, &t.y_i], &d)));
    c.expect("gY ∩ R_X = X_R ⊕ X_I", img_r.is_some_and(|d| is_direct_sum(&[&t.x_r, &t.x_i], &d)));
    c.expect("R_Y = Y_R ⊕ Y_I ⊕ Y_R'", is_direct_sum(&[&t.y_r, &t.y_i, &t.y_r_prime], &r_y));
    c.expect("R_X = X_R ⊕ X_I ⊕ X_R'", is_direct_sum(&[&t.x_r, &t.x_i, &t.x_r_prime], &r_x));
    c.expect("Xg = Y_R ⊕ Y_I ⊕ X_Ig ⊕ W", is_direct_sum(&[&t.y_r, &t.y_i, &t.x_ig, &t.w], &dom));
    c.expect_res("Y_L = W ∩ W^⊥", y.orthogonal(&t.w).and_then(|o| o.intersect(&t.w)).map(|l| l == t.y_l));
    c.expect("W = Y_L ⊕ Y_S", is_direct_sum(&[&t.y_l, &t.y_s], &t.w));
    c.expect(
        "gY = X_R ⊕ gY_I ⊕ X_I ⊕ X_L ⊕ X_S",
        is_direct_sum(&[&t.x_r, &t.g_y_i, &t.x_i, &t.x_l, &t.x_s], &img),
    );
    c.expect("Y_S symplectic", symplectic(y, &t.y_s));
    c.expect("X_S symplectic", symplectic(x, &t.x_s));
    c.expect("Y_S' symplectic", symplectic(y, &t.y_s_prime));
    c.expect("X_S' symplectic", symplectic(x, &t.x_s_prime));
    c.expect("E_Y ⊕ R_Y = Y", symplectic(y, &t.e_y) && is_direct_sum(&[&t.e_y, &r_y], &Subspace::full(y.dim())));
    c.expect("E_X ⊕ R_X = X", symplectic(x, &t.e_x) && is_direct_sum(&[&t.e_x, &r_x], &Subspace::full(x.dim())));

    let y_parts = [&t.x_ig, &t.x_ig_dual, &t.y_l, &t.y_l_dual, &t.y_s, &t.y_s_prime];
    let x_parts = [&t.g_y_i, &t.g_y_i_dual, &t.x_l, &t.x_l_dual, &t.x_s, &t.x_s_prime];
    c.expect("E_Y = X_Ig ⊕ X_Ig* ⊕ Y_L ⊕ Y_L* ⊕ Y_S ⊕ Y_S'", is_direct_sum(&y_parts, &t.e_y));
    c.expect("E_X = gY_I ⊕ gY_I* ⊕ X_L ⊕ X_L* ⊕ X_S ⊕ X_S'", is_direct_sum(&x_parts, &t.e_x));
    c.expect(
        "Y = Y_R ⊕ Y_I ⊕ Y_R' ⊕ X_Ig ⊕ X_Ig* ⊕ Y_L ⊕ Y_L* ⊕ Y_S ⊕ Y_S'",
        is_direct_sum(
            &[&t.y_r, &t.y_i, &t.y_r_prime, &t.x_ig, &t.x_ig_dual, &t.y_l, &t.y_l_dual, &t.y_s, &t.y_s_prime],
            &Subspace::full(y.dim()),
        ),
    );
    c.expect(
        "X = X_R ⊕ X_I ⊕ X_R' ⊕ gY_I ⊕ gY_I* ⊕ X_L ⊕ X_L* ⊕ X_S ⊕ X_S'",
        is_direct_sum(
            &[&t.x_r, &t.x_i, &t.x_r_prime, &t.g_y_i, &t.g_y_i_dual, &t.x_l, &t.x_l_dual, &t.x_s, &t.x_s_prime],
            &Subspace::full(x.dim()),
        ),
    );

    // The nine products carrying the blocks split X × Y, and g splits along them.
    let (zx, zy) = (Subspace::zero(x.dim()), Subspace::zero(y.dim()));
    let pieces: Vec<Result<Subspace>> = vec![
        Ok(t.x_r.product(&t.y_r)),
        Ok(t.x_r_prime.product(&zy)),
        Ok(zx.product(&t.y_r_prime)),
        t.x_ig.sum(&t.x_ig_dual).map(|s| t.x_i.product(&s)),
        t.g_y_i.sum(&t.g_y_i_dual).map(|s| s.product(&t.y_i)),
        t.x_l.sum(&t.x_l_dual).and_then(|a| t.y_l.sum(&t.y_l_dual).map(|b| a.product(&b))),
        Ok(t.x_s.product(&t.y_s)),
        Ok(t.x_s_prime.product(&zy)),
        Ok(zx.product(&t.y_s_prime)),
    ];
    match pieces.into_iter().collect::<Result<Vec<Subspace>>>() {
        Ok(pieces) => {
            let refs: Vec<&Subspace> = pieces.iter().collect();
            c.expect("X × Y = nine-summand splitting", is_direct_sum(&refs, &Subspace::full(x.dim() + y.dim())));
            let parts: Result<Vec<Subspace>> = pieces.iter().map(|p| g.graph().intersect(p)).collect();
            c.expect(
                "g = ⊕ g ∩ (nine summands)",
                parts.is_ok_and(|ps| is_direct_sum(&ps.iter().collect::<Vec<_>>(), g.graph())),
            );
        }
        Err(_) => c.expect("nine summands well formed", false),
    }

    // Symplectic pieces pair only with themselves; the rest of each side is
    // isotropic and pairs only with its dual.
    let halves = |space: &BilinearSpace, a: &Subspace, b: &Subspace| sum(&[a, b]).is_ok_and(|s| isotropic(space, &s));
    c.expect("X_Ig ⊕ Y_L isotropic", halves(y, &t.x_ig, &t.y_l));
    c.expect("X_Ig* ⊕ Y_L* isotropic", halves(y, &t.x_ig_dual, &t.y_l_dual));
    c.expect("gY_I ⊕ X_L isotropic", halves(x, &t.g_y_i, &t.x_l));
    c.expect("gY_I* ⊕ X_L* isotropic", halves(x, &t.g_y_i_dual, &t.x_l_dual));
    for i in 0..6 {
        for j in (i + 1).max(4)..6 {
            if i != j {
                c.expect("Y_S, Y_S' ⊥ rest of E_Y", orthogonal(y, y_parts[i], y_parts[j]));
                c.expect("X_S, X_S' ⊥ rest of E_X", orthogonal(x, x_parts[i], x_parts[j]));
            }
        }
    }
    c.expect("X_Ig ⊥ Y_L*", orthogonal(y, &t.x_ig, &t.y_l_dual));
    c.expect("Y_L ⊥ X_Ig*", orthogonal(y, &t.y_l, &t.x_ig_dual));
    c.expect("gY_I ⊥ X_L*", orthogonal(x, &t.g_y_i, &t.x_l_dual));
    c.expect("X_L ⊥ gY_I*", orthogonal(x, &t.x_l, &t.g_y_i_dual));
}

#[cfg(test)]
mod tests {
    use crate::catalog::{random_instance, IndecompType};
    use crate::decompose::decompose;
    use crate::invariants::MultiplicityVector;
    use crate::space::Flavor;

    #[test]
    fn trace_of_a_mixed_instance_verifies() {
        let n = MultiplicityVector([1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1]);
        let inst = random_instance(&n, Flavor::Presymplectic, 7);
        let cert = decompose(&inst.relation).unwrap();
        assert_eq!(cert.trace.failures(&inst.relation), Vec::<String>::new());
    }

    #[test]
    fn tampered_trace_is_caught() {
        let n = MultiplicityVector::unit(IndecompType::I2) + MultiplicityVector::unit(IndecompType::I12);
        let inst = random_instance(&n, Flavor::Presymplectic, 3);
        let cert = decompose(&inst.relation).unwrap();
        let mut bad = cert.trace.clone();
        bad.split.x_b = bad.split.x_0_dual.clone();
        assert!(!bad.verify(&inst.relation));
        let mut bad = cert.trace.clone();
        bad.biinjective.y_i = bad.biinjective.y_r_prime.clone();
        assert!(!bad.verify(&inst.relation));
    }
}
