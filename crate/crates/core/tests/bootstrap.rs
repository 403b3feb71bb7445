use moonshine_core::data;
use moonshine_core::moonshine::bootstrap::{bootstrap, BOOTSTRAP_ORDER};
use moonshine_core::moonshine::{bundled_square_map, square_map_to_tsv, Registry};
use moonshine_core::schwarzfit::corpus::bundled_corpus;

#[test]
fn shipped_data_regenerates_from_the_corpus() {
    let boot = bootstrap(&bundled_corpus(), BOOTSTRAP_ORDER).unwrap();
    assert_eq!(boot.registry.to_tsv(), data::REGISTRY);
    assert_eq!(square_map_to_tsv(&boot.squares), data::SQUARES);
}

#[test]
fn square_map_agrees_with_registry() {
    let reg = Registry::bundled();
    let map = bundled_square_map();
    assert_eq!(
        map.len(),
        reg.classes().iter().filter(|c| c.available).count()
    );
    for e in &map {
        let class = reg.get(&e.label).unwrap();
        assert!(class.available, "{}", e.label);
        assert_eq!(
            class.square.as_deref(),
            Some(e.square.as_str()),
            "{}",
            e.label
        );
    }
}

#[test]
fn registry_round_trips_through_its_text_form() {
    let reg = Registry::bundled();
    assert_eq!(reg.len(), 174);
    let again = Registry::parse(&reg.to_tsv()).unwrap();
    assert_eq!(again.to_tsv(), reg.to_tsv());
}
