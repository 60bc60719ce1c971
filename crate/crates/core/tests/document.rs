use proptest::prelude::*;
use scf_core::document::{ChannelDocument, Payload, Rep};
use scf_core::sampling::{random_channel, rng};
use scf_core::MapKind;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(f64::MAX),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn arbitrary_floats_round_trip_bit_exact(values in prop::collection::vec(finite(), 32)) {
        let rows: Vec<Vec<[f64; 2]>> = values.chunks(8).map(|c| c.chunks(2).map(|p| [p[0], p[1]]).collect()).collect();
        let doc = ChannelDocument { n: 2, rep: Rep::Superop, kind: MapKind::Generator, data: Payload::Matrix(rows), meta: None };
        let back = ChannelDocument::from_json(&doc.to_json()).unwrap();
        let (Payload::Matrix(a), Payload::Matrix(b)) = (&doc.data, &back.data) else { unreachable!() };
        for (ra, rb) in a.iter().zip(b) {
            for (x, y) in ra.iter().zip(rb) {
                prop_assert_eq!(x[0].to_bits(), y[0].to_bits());
                prop_assert_eq!(x[1].to_bits(), y[1].to_bits());
            }
        }
    }

    #[test]
    fn channel_documents_round_trip(seed in any::<u64>(), n in 1usize..4, rep_index in 0usize..4) {
        let rep = [Rep::Superop, Rep::Choi, Rep::Kraus, Rep::Ptm][rep_index];
        let n = if rep == Rep::Ptm { 2 } else { n };
        let s = random_channel(n, &mut rng(seed));
        let doc = ChannelDocument::from_superop(&s, MapKind::Channel, rep).unwrap().with_meta("seed", seed.to_string());
        let text = doc.to_json();
        let back = ChannelDocument::from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
        prop_assert!((back.to_superop().unwrap().matrix() - s.matrix()).max_abs() < 1e-10);
    }
}
