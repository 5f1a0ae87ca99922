use crate::algebra::{int, Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// `b^2 - 4ac` for a polynomial `a y^2 + b y + c` whose coefficients may
/// involve the other variables.
pub fn discriminant_y_poly(v: &Polynomial) -> Result<Polynomial> {
    let deg = v.degree_in("y");
    if deg != 2 {
        return Err(Error::WrongDegree {
            var: "y".into(),
            expected: 2,
            found: deg,
        });
    }
    let a = v.coeff_in("y", 2);
    let b = v.coeff_in("y", 1);
    let c = v.coeff_in("y", 0);
    Ok(&(&b * &b) - &(&a * &c).scale(&int(4)))
}

/// Discriminant in `y` of a rational function whose denominator does not
/// involve `y`: `disc(num) / den^2`.
pub fn discriminant_y(v: &RationalFunction) -> Result<RationalFunction> {
    if v.den().degree_in("y") > 0 {
        return Err(Error::WrongShape(
            "denominator depends on y; not a polynomial in y".into(),
        ));
    }
    let d = discriminant_y_poly(v.num())?;
    RationalFunction::new(d, v.den().pow(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RationalFunction {
        RationalFunction::var("x")
    }
    fn y() -> RationalFunction {
        RationalFunction::var("y")
    }
    fn c(n: i64) -> RationalFunction {
        RationalFunction::constant(int(n))
    }

    #[test]
    fn unit_circle() {
        let v = y() * y() + x() * x() - c(1);
        assert_eq!(discriminant_y(&v).unwrap(), c(4) - c(4) * x() * x());
    }

    #[test]
    fn rational_lienard_curve() {
        // y^2 - F y + x^2 with F = x (1 - x^2) / (1 + x^2)
        let s = c(1) + x() * x();
        let f = (x() * (c(1) - x() * x())).checked_div(&s).unwrap();
        let v = y() * y() - &f * &y() + x() * x();
        let expect = -(x() * x() * (x() * x() + c(3)) * (c(3) * x() * x() + c(1)))
            .checked_div(&s.pow(2))
            .unwrap();
        assert_eq!(discriminant_y(&v).unwrap(), expect);
    }

    #[test]
    fn perfect_square() {
        let v = y() * y() - c(2) * x() * y() + x() * x();
        assert!(discriminant_y(&v).unwrap().is_zero());
    }

    #[test]
    fn wrong_degree() {
        let v = y() * y() * y() + x();
        assert!(matches!(discriminant_y(&v), Err(Error::WrongDegree { found: 3, .. })));
    }
}
