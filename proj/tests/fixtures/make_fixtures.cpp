// Regenerates the bit-file fixtures under tests/data. The committed files are
// the reference; the test suite checks that this program still reproduces them.
#include <cstdio>
#include <filesystem>
#include <random>

#include "files.hpp"
#include "fixtures.hpp"

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "tests/data";
    using namespace chaoscrypt;
    save_bit_file(dir / fixtures::kMtFile, fixtures::mt_bits(fixtures::kMtSeed, fixtures::kFixtureBits),
                  {"mt19937_64", fixtures::kFixtureBits, 0});
    auto key = derive_key(fixtures::kHybridHenonSeed, GeneratorKind::HybridHenon);
    key.spec.n_bits = fixtures::kFixtureBits;
    save_bit_file(dir / fixtures::kHybridHenonFile, generate_bits(key.spec),
                  {"hybrid-henon", fixtures::kFixtureBits, key.spec.transient});
    std::printf("wrote fixtures to %s\n", dir.c_str());
}
