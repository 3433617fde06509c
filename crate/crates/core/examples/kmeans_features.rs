// Cluster in a reduced feature space and compare the cost on the original data.

use matsketch::kmeans::{kmeans_cost, lloyd, reduce_features, ClusterAssignment, FeatureMethod};
use matsketch::synthetic::blobs;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = blobs(300, 100, 3, 10.0, 4)?;
    let a = &data.points;
    let k = 3;
    let planted = ClusterAssignment::new(data.labels.clone(), k)?;
    let full = lloyd(a, k, 5, 1)?;
    let full_cost = kmeans_cost(a, &full)?;
    println!("full data: cost {full_cost:.1}, planted recovered {}", full.same_partition(&planted));

    for (method, c0) in [(FeatureMethod::Select, 0.1), (FeatureMethod::Rp, 1.0), (FeatureMethod::Svd, 1.0)] {
        let red = reduce_features(a, k, 1.0 / 3.0, method, c0, 2)?;
        let labels = lloyd(&red.c, k, 5, 2)?;
        let cost = kmeans_cost(a, &labels)?;
        println!(
            "{method:?}: {} features, cost ratio {:.4}, planted recovered {}",
            red.r,
            cost / full_cost,
            labels.same_partition(&planted)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
