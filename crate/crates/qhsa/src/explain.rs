//! Descriptions of the identities behind each check id.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no check or suite named {0:?}")]
pub struct UnknownCheck(pub String);

const TABLE: &[(&str, &str)] = &[
    (
        "datum-validate",
        "Borcherds-Cartan superdatum axioms and the Q and gamma tables built on them.",
    ),
    (
        "datum-validate.examples",
        "The 1x1 matrix (2) with even parity is a valid datum; an odd vertex with a_ij = -1 violates the \
         even-row axiom (iv); a_ij = -1 with a_ji = 0 violates the zero-pattern axiom (iii).",
    ),
    (
        "datum-validate.tables",
        "The datum satisfies axioms (i)-(v); every term t u^a v^b of Q_ij has r_i a + r_j b = -i.j with even \
         powers of odd variables, t_{i,j;a,b} = t_{j,i;b,a}, t_{i,j;-a_ij,0} != 0, Q_ij = 1 when i.j = 0; \
         gamma_ij = 1 unless both vertices are odd, and gamma_ij gamma_ji = -1/2 when they are.",
    ),
    ("datum-validate.q-symmetry", "Q_ij(u, v) = Q_ji(v, u) under a fixed polynomial substitution."),
    (
        "covering-gram",
        "The twisted coproduct rho_pi and the bilinear form {,}_pi on the free algebra generated by theta_i.",
    ),
    (
        "covering-gram.kappa",
        "{theta_i, theta_i} = kappa_i = (1 - pi^{p(i)} q_i^2)^{-1}, specializing to 1/(1 - q_i^2) at pi = 1 and \
         1/(1 - (-1)^{p(i)} q_i^2) at pi = -1.",
    ),
    ("covering-gram.symmetry", "The Gram matrix of {,}_pi on the words of one weight is symmetric."),
    (
        "covering-gram.coproduct",
        "{x, y z} = {rho_pi(x), y (x) z} for all words x and splittings y z of equal weight, where \
         {a (x) b, c (x) d} = {a, c}{b, d}.",
    ),
    (
        "serre-radical",
        "Quantum Serre elements and the i.j = 0 commutators lie in the radical of {,}_pi; generators do not.",
    ),
    (
        "serre-radical.serre",
        "sum_{a+b=1-n a_ij} (-1)^a pi^{p(a;i,j;n)} theta_i^(a) theta_j^n theta_i^(b) is killed by the Gram \
         matrix, and equivalently by every iterated rho^i along the words of its weight.",
    ),
    (
        "serre-radical.commutator",
        "theta_i theta_j - pi^{p(i)p(j)} theta_j theta_i lies in the radical when i.j = 0, by both criteria.",
    ),
    ("serre-radical.generator", "theta_i is not in the radical (its self-pairing is kappa_i); both criteria agree."),
    (
        "boson-identities",
        "The boson operators e'_i, e''_i on the free algebra, the binomial identities behind the Serre \
         relations, and the form defined through e'_i.",
    ),
    (
        "boson-identities.binomial-recursion",
        "[n, k] = (pi^p q^r)^k [n-1, k] + q^{-r(n-k)} [n-1, k-1] for the pi-quantum binomials, and at pi = -1 \
         [n, k] = q^{-rk} [n-1, k] + (-1)^{(n-k)p} q^{r(n-k)} [n-1, k-1]; n <= 8, r in {1, 2}, both parities.",
    ),
    (
        "boson-identities.serre-sum",
        "sum_{a+b=m} (-1)^{a + p(a;i,j) + b p(i)p(j)} q_i^{b(m-1)} [m, a]_i = 0 at pi = -1 for every degree m = 1 - a_ij \
         that a datum admits (m odd when i is odd). For odd i and even m the sum is nonzero, while the classical \
         sum with sign (-1)^{a + b(b-1)p(i)/2} still vanishes; the check confirms both.",
    ),
    (
        "boson-identities.parity-congruence",
        "p(a;i,j) + (b-1)p(i) + p(a+1;i,j) + (m-1)p(i) + p(i)p(j) is even for all a + b = m <= 8.",
    ),
    (
        "boson-identities.recursion",
        "e'_i(f_j w) = delta_ij w + s^{p(i)p(j)} q^{-i.j} f_j e'_i(w) and e''_i(f_j w) = delta_ij w + \
         s^{p(i)p(j)} q^{i.j} f_j e''_i(w), with s = pi, 1 or -1 by mode, on all words.",
    ),
    ("boson-identities.commutation", "e'_i e''_j = s^{p(i)p(j)} q^{i.j} e''_j e'_i as operators on all words."),
    (
        "boson-identities.serre-operator",
        "S = sum_{a+b=m} c_a e'_i^a e'_j e'_i^b with m = 1 - a_ij satisfies S f_k = (-1)^{(m p(i) + p(j)) p(k)} \
         q^{-m k.i - k.j} f_k S on all words.",
    ),
    (
        "boson-identities.form",
        "The form with <1, 1> = 1 and <f_i x, y> = kappa_i <x, e'_i y> equals {,}_pi under the selected pi mode.",
    ),
    (
        "boson-identities.nondegeneracy",
        "At pi = -1 the Gram matrix kills the two-sided ideal spanned by Serre and commutator elements, and its \
         rank equals the codimension of that ideal.",
    ),
    (
        "rep-verify",
        "The polynomial representation on Clifford polynomials satisfies the defining relations of R(nu).",
    ),
    (
        "rep-verify.relations",
        "Every local relation (idempotents, dot commutation, tau^2 = Q, dot-crossing, distant commutation, \
         braid with its Q-correction) holds as an operator identity on all monomials of degree <= 6 in 1_i.",
    ),
    ("qhsa-differential", "Straightening agrees with the polynomial representation."),
    (
        "qhsa-differential.homomorphism",
        "For random basis symbols a, b: act(mult(a, b)) = act(a) o act(b) on random monomials, and mult(a, b) is \
         homogeneous of bidegree deg a + deg b.",
    ),
    (
        "qhsa-differential.independence",
        "The basis symbols x^u tau_w 1_i of R(nu) with dot exponents <= 2 act linearly independently on the \
         probe vectors tau_w' prod_k (c_k^{p} w_k)^{n-k} of the polynomial representation.",
    ),
    ("onh", "The one-vertex algebras R(ni): nil-Hecke and odd nil-Hecke computations."),
    ("onh.idempotent", "e_{i,n} = +-x_1^{n-1} ... x_{n-1} tau_{w0} 1_{i^n} satisfies e_{i,n}^2 = e_{i,n}."),
    (
        "onh.tau-omega0",
        "tau_{w0} applied to x_1^{n-1} ... x_{n-1} in the polynomial representation is the constant (-1)^{C(n,3)} \
         for odd i, and 1 for even i.",
    ),
    (
        "onh.center",
        "For odd i the elementary symmetric functions of x_1^2, ..., x_n^2 supercommute with every generator of \
         R(ni), while x_1 does not.",
    ),
    (
        "onh.trivial-module",
        "For odd imaginary i, sending 1_{ii} to 1 and every other basis symbol to 0 is multiplicative.",
    ),
    ("pairing", "Graded dimensions of R(nu) match the bilinear form: dim 1_j R 1_i = {theta_i, theta_j}."),
    (
        "pairing.series",
        "dim_q^pi 1_j R(nu) 1_i equals the power series of {theta_i, theta_j}_pi up to the given order; the \
         orientation of the words is recorded in the report header.",
    ),
    ("pairing.kappa", "dim_q^pi 1_i R(i) 1_i is exactly the series of (1 - pi^{p(i)} q_i^2)^{-1}."),
    ("serre-cat", "Graded dimensions of divided-power projectives satisfy the Serre relations."),
    (
        "serre-cat.serre",
        "sum over even c of pi^{p(c;i,j;n)} dim 1_k P_{i^(c) j^n i^(m-c)} equals the same sum over odd c, for every \
         label k, with P_{i^(a) j^n i^(b)} cut out by the idempotents e_{i,a} and e_{i,b}.",
    ),
    ("serre-cat.orthogonal", "When i.j = 0: dim 1_k P_ij = pi^{p(i)p(j)} dim 1_k P_ji for every label k."),
    ("mackey", "The Mackey decomposition of restriction after induction, at the level of graded dimensions."),
    (
        "mackey.dim",
        "dim Res_{nu,nu'} Ind_{mu,mu'} (P_i (x) P_j) equals the sum over lambda of the shifted dimensions of the \
         induced subquotients, pi^{p(lambda)p(nu'-mu'+lambda)} q^{-lambda.(nu'-mu'+lambda)}.",
    ),
];

/// Text for a check id (`key[detail]`), a check key, or a suite name.
pub fn explain(id: &str) -> Result<String, UnknownCheck> {
    let key = id.split('[').next().unwrap_or(id);
    let text = TABLE.iter().find(|(k, _)| *k == key).map(|(_, t)| *t).ok_or_else(|| UnknownCheck(id.to_string()))?;
    let mut out = format!("{key}: {text}\n");
    if !key.contains('.') {
        let prefix = format!("{key}.");
        for (k, t) in TABLE.iter().filter(|(k, _)| k.starts_with(&prefix)) {
            out.push_str(&format!("  {k}: {t}\n"));
        }
    }
    Ok(out)
}

/// Every key in the table.
pub fn keys() -> impl Iterator<Item = &'static str> {
    TABLE.iter().map(|(k, _)| *k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Suite;

    #[test]
    fn every_suite_has_text() {
        for s in Suite::ALL {
            assert!(explain(s.name()).is_ok(), "{s}");
        }
        assert!(explain("onh.tau-omega0").unwrap().contains("(-1)^{C(n,3)}"));
        assert!(explain("pairing.series[super:i|i]").is_ok());
        assert_eq!(explain("nope"), Err(UnknownCheck("nope".into())));
    }
}
