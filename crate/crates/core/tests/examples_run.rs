mod barrier_sparsification {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/barrier_sparsification.rs"));
}

mod cx_reconstruction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cx_reconstruction.rs"));
}

mod cssp_interpolative {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cssp_interpolative.rs"));
}

mod regression_coreset {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/regression_coreset.rs"));
}

mod kmeans_features {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kmeans_features.rs"));
}

mod fast_svd {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fast_svd.rs"));
}

mod srht_sketch {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/srht_sketch.rs"));
}

mod lower_bound {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lower_bound.rs"));
}

mod reports_and_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/reports_and_files.rs"));
}

#[test]
fn barrier_sparsification_runs() {
    barrier_sparsification::run_example().expect("barrier_sparsification example should run");
}

#[test]
fn cx_reconstruction_runs() {
    cx_reconstruction::run_example().expect("cx_reconstruction example should run");
}

#[test]
fn cssp_interpolative_runs() {
    cssp_interpolative::run_example().expect("cssp_interpolative example should run");
}

#[test]
fn regression_coreset_runs() {
    regression_coreset::run_example().expect("regression_coreset example should run");
}

#[test]
fn kmeans_features_runs() {
    kmeans_features::run_example().expect("kmeans_features example should run");
}

#[test]
fn fast_svd_runs() {
    fast_svd::run_example().expect("fast_svd example should run");
}

#[test]
fn srht_sketch_runs() {
    srht_sketch::run_example().expect("srht_sketch example should run");
}

#[test]
fn lower_bound_runs() {
    lower_bound::run_example().expect("lower_bound example should run");
}

#[test]
fn reports_and_files_runs() {
    reports_and_files::run_example().expect("reports_and_files example should run");
}
