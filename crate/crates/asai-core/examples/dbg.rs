fn main() {
    let nu = asai_core::dirichlet::DirichletCharacter::quadratic(5);
    println!("modulus {} conductor {} vo {}", nu.modulus(), nu.conductor(), nu.value_order());
    for a in 1..5 { println!("chi({a}) exp = {:?}", nu.value_exponent(a)); }
    let g = asai_core::dirichlet::gauss_sum(&nu);
    println!("{:?}", g.map(|c| c.to_string()));
}
