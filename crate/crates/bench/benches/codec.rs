use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ibtc::codec::{decode_image, encode_image, Mode};
use ibtc::container;
use ibtc_bench::test_image;

fn bench_encode(c: &mut Criterion) {
    let image = test_image();
    let mut group = c.benchmark_group("encode_256x256");
    group.throughput(Throughput::Bytes(u64::from(image.width()) * u64::from(image.height())));
    for mode in Mode::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(mode), &mode, |b, &mode| {
            b.iter(|| encode_image(&image, mode).unwrap());
        });
    }
    group.finish();
}

fn bench_decode(c: &mut Criterion) {
    let image = test_image();
    let mut group = c.benchmark_group("decode_256x256");
    group.throughput(Throughput::Bytes(u64::from(image.width()) * u64::from(image.height())));
    for mode in Mode::ALL {
        let ci = encode_image(&image, mode).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(mode), &ci, |b, ci| {
            b.iter(|| decode_image(ci).unwrap());
        });
    }
    group.finish();
}

fn bench_container(c: &mut Criterion) {
    let image = test_image();
    let ci = encode_image(&image, Mode::Level4).unwrap();
    let bytes = container::serialize(&ci);
    c.bench_function("serialize_256x256_l4", |b| {
        b.iter(|| container::serialize(&ci));
    });
    c.bench_function("deserialize_256x256_l4", |b| {
        b.iter(|| container::deserialize(&bytes).unwrap());
    });
}

criterion_group!(benches, bench_encode, bench_decode, bench_container);
criterion_main!(benches);
