//! Published values for the two-, three- and four-site chains.
//!
//! Normalizations are given as `ρ²`; where `ρ` involves a square root the
//! square is formed exactly from the printed radical.

use crate::linalg::rational::parse;
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceValues {
    pub n: usize,
    /// Per root in canonical order, the coefficients after the leading 1
    /// (`a_i`, then `b_i`, then `c_i`).
    pub coeffs: Vec<Vec<Rational>>,
    pub rho_sq: Vec<Rational>,
    /// `x_k` in `p = S^z + Σ x_k T_k^z`, when published.
    pub tower_coeffs: Option<Vec<Rational>>,
    pub alpha: Vec<Rational>,
}

fn q(text: &str) -> Rational {
    parse(text).expect("literal rational")
}

fn qs(texts: &[&str]) -> Vec<Rational> {
    texts.iter().map(|t| q(t)).collect()
}

/// `(num/den)² · factor`.
fn square_times(num: &str, den: &str, factor: &str) -> Rational {
    let base = q(num) / q(den);
    &base * &base * q(factor)
}

/// Returns the published values for `n ∈ {2, 3, 4}`.
pub fn reference_values(n: usize) -> Option<ReferenceValues> {
    match n {
        2 => Some(ReferenceValues {
            n,
            coeffs: vec![qs(&["-1/4"]), qs(&["1/2"])],
            rho_sq: qs(&["2/9", "1/27"]),
            tower_coeffs: Some(qs(&["-7/6", "1/24"])),
            alpha: qs(&["2", "3/2"]),
        }),
        3 => Some(ReferenceValues {
            n,
            coeffs: vec![
                qs(&["1081/29628", "-11/3199824"]),
                qs(&["277/3456", "-1/186624"]),
                qs(&["581/7038", "-1/760104"]),
            ],
            rho_sq: vec![
                square_times("1646", "885", "1/3"),
                square_times("64", "295", "2"),
                square_times("391", "885", "1/21"),
            ],
            tower_coeffs: Some(qs(&[
                "-792749/3106467",
                "-1302389/251623827",
                "61/586880636256",
            ])),
            alpha: qs(&["3", "5", "3"]),
        }),
        4 => Some(ReferenceValues {
            n,
            coeffs: vec![
                qs(&[
                    "105625140496014730841477/7703529626668586930816688",
                    "-5256682134946428299/1365302481526494176046280704",
                    "326351/148888835146389016342758102889660416",
                ]),
                qs(&[
                    "415175982533783376793/13752186821722991129796",
                    "-3923011779201308513/1013921229991992690017599488",
                    "-74917/8505387741280669815423155205832704",
                ]),
                qs(&[
                    "32936728012334124913399/1363174534869932976556176",
                    "-9024272054124165191/348972680926702841998381056",
                    "5311/60987396312566393208549069029376",
                ]),
                qs(&[
                    "21741465949931994477137/904173010239198188108928",
                    "-18259103029394551109/694404871863704208467656704",
                    "-581743/5825090263354844032785452768428032",
                ]),
            ],
            rho_sq: vec![
                square_times("206344543571480007075447", "217682719003513150677430", "1"),
                square_times("3929196234777997465656", "21768271900351315067743", "2/5"),
                square_times("4057067068065276715941", "108841359501756575338715", "1/10"),
                square_times("672747775475593889962", "108841359501756575338715", "2/19"),
            ],
            tower_coeffs: None,
            alpha: qs(&["4", "7", "9", "5"]),
        }),
        _ => None,
    }
}
