//! Student-t quantiles and tail probabilities.
//!
//! ```text
//! cargo run --example student_t_quantiles
//! ```

use elliptic_ccp::elliptical::{t_cdf, t_quantile};

fn main() {
    let probs = [0.9, 0.95, 0.975, 0.99, 0.995, 0.999];
    print!("{:>6}", "df");
    for p in probs {
        print!("{p:>12}");
    }
    println!();
    for df in [1u64, 2, 5, 11, 24, 100] {
        print!("{df:>6}");
        for p in probs {
            print!("{:>12.6}", t_quantile(df, p).expect("valid"));
        }
        println!();
    }

    let q = t_quantile(24, 0.99).expect("valid");
    println!("\nt(24, 0.99) = {q:.15}");
    println!("F(q)        = {:.15}", t_cdf(24, q).expect("valid"));
}
