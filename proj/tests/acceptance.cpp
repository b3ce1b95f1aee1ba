// Acceptance run: one PASS/FAIL line per criterion. `--quick` skips the 4x4
// Hex sample; OG_SEED overrides the seed.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "support/acceptance.hpp"

int main(int argc, char** argv) {
  og::testing::suite_options o;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--quick")) o.quick = true;
  if (const char* s = std::getenv("OG_SEED")) o.seed = std::strtoull(s, nullptr, 10);
  int failed = 0;
  og::testing::run_acceptance(o, [&](const og::testing::criterion_result& r) {
    std::printf("%s %2d %-30s %7.2fs (limit %.0fs)  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.limit, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  return failed ? 1 : 0;
}
