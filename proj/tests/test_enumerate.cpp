#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

#include "lislab/enumerate.hpp"
#include "lislab/io.hpp"
#include "lislab/modular.hpp"
#include "lislab/series.hpp"
#include "lislab/simulate.hpp"

using namespace lislab;

namespace {
mpz_class fact(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}
}  // namespace

TEST_CASE("Class names and totals") {
  CHECK(to_string(PermClass::Plain) == "PLAIN");
  CHECK(to_string(PermClass::InvolutionInc) == "INVOLUTION_INC");
  CHECK(parse_perm_class("dec") == PermClass::InvolutionDec);
  CHECK(parse_perm_class("INC") == PermClass::InvolutionInc);
  CHECK(parse_perm_class("INVOLUTION_DEC") == PermClass::InvolutionDec);
  CHECK_THROWS_AS(parse_perm_class("odd"), ArgumentError);
  CHECK(class_total(PermClass::Plain, 5) == 120);
  CHECK(class_total(PermClass::InvolutionInc, 6) == 15);
  CHECK(class_total(PermClass::InvolutionDec, 5) == 0);
}

TEST_CASE("Plain enumeration examples") {
  for (auto backend : {ExactBackend::Modular, ExactBackend::Rational}) {
    for (int l = 1; l <= 4; ++l) CHECK(enumerate_plain(6, l, backend)[1] == 1);
    CHECK(enumerate_plain(3, 2, backend)[3] == 5);
    CHECK(enumerate_plain(5, 5, backend)[5] == 120);
    CHECK(enumerate_plain(5, 1, backend)[5] == 1);
  }
  const std::vector<int> example{2, 5, 6, 8, 7, 3, 4, 1};
  CHECK(lis(example) == 4);
  const auto t8 = oracle_bruteforce(8, PermClass::Plain);
  CHECK(enumerate_plain(8, 4)[8] == t8.counts[4]);
  CHECK(t8.counts[3] < t8.counts[4]);
  CHECK_THROWS_AS(enumerate_plain(-1, 2), DomainError);
}

TEST_CASE("Involution enumeration examples") {
  for (auto backend : {ExactBackend::Modular, ExactBackend::Rational}) {
    for (int l = 1; l <= 4; ++l) CHECK(enumerate_involution(4, l, PermClass::InvolutionInc, backend)[2] == 1);
    const auto inc = enumerate_involution(9, 3, PermClass::InvolutionInc, backend);
    for (int N = 1; N <= 9; N += 2) CHECK(inc[N] == 0);
  }
  const auto b6i = oracle_bruteforce(6, PermClass::InvolutionInc);
  const auto b6d = oracle_bruteforce(6, PermClass::InvolutionDec);
  for (int l = 1; l <= 6; ++l) {
    CHECK(enumerate_involution(6, l, PermClass::InvolutionInc)[6] == b6i.counts[l]);
    CHECK(enumerate_involution(6, l, PermClass::InvolutionDec)[6] == b6d.counts[l]);
  }
  CHECK_THROWS_AS(enumerate_involution(6, 2, PermClass::Plain), ArgumentError);
}

TEST_CASE("Brute-force oracle") {
  const auto t4 = oracle_bruteforce(4, PermClass::Plain);
  CHECK(t4.total() == 24);
  CHECK(t4.counts == std::vector<mpz_class>{0, 1, 14, 23, 24});
  // (2,1,4,3): lds 2, (3,4,1,2): lds 2, (4,3,2,1): lds 4
  const auto d4 = oracle_bruteforce(4, PermClass::InvolutionDec);
  CHECK(d4.counts == std::vector<mpz_class>{0, 0, 2, 2, 3});
  CHECK_THROWS_AS(oracle_bruteforce(9, PermClass::Plain), DomainError);
  CHECK_THROWS_AS(oracle_bruteforce(7, PermClass::InvolutionInc), DomainError);
  CHECK_THROWS_AS(oracle_bruteforce(14, PermClass::InvolutionDec), DomainError);
}

TEST_CASE("Hook-length oracle") {
  CHECK(oracle_hook_length(3, 2) == 5);
  for (int N : {1, 5, 12, 20}) CHECK(oracle_hook_length(N, N) == fact(N));
  CHECK(oracle_hook_length(30, 11) == enumerate_plain(30, 11)[30]);
  CHECK_THROWS_AS(oracle_hook_length(41, 3), DomainError);
}

TEST_CASE("Oracle equality") {
  for (auto backend : {ExactBackend::Modular, ExactBackend::Rational}) {
    for (int N = 1; N <= 8; ++N) CHECK(build_table(PermClass::Plain, N, backend).counts == oracle_bruteforce(N, PermClass::Plain).counts);
    for (auto cls : {PermClass::InvolutionInc, PermClass::InvolutionDec})
      for (int N = 2; N <= 12; N += 2) CHECK(build_table(cls, N, backend).counts == oracle_bruteforce(N, cls).counts);
  }
  std::vector<int> Ns;
  for (int N = 1; N <= 30; ++N) Ns.push_back(N);
  const auto T = build_tables(PermClass::Plain, Ns, ExactBackend::Modular, 2);
  for (int N : Ns)
    for (int l = 0; l <= N; ++l) CHECK(T.at(N).counts[l] == oracle_hook_length(N, l));
}

TEST_CASE("Backends agree and tables satisfy their invariants") {
  for (auto cls : {PermClass::Plain, PermClass::InvolutionInc, PermClass::InvolutionDec}) {
    const auto a = build_table(cls, 60, ExactBackend::Modular, 2);
    const auto b = build_table(cls, 60, ExactBackend::Rational, 1);
    CHECK(a.counts == b.counts);
    CHECK_NOTHROW(a.check_invariants());
    if (cls == PermClass::InvolutionDec)
      for (int l = 1; l < 60; l += 2) CHECK(a.counts[l] == a.counts[l - 1]);
  }
}

TEST_CASE("Monotonicity in l and N") {
  std::vector<int> Ns;
  for (int N = 1; N <= 50; ++N) Ns.push_back(N);
  const auto T = build_tables(PermClass::Plain, Ns, ExactBackend::Modular, 2);
  for (int N = 1; N <= 50; ++N)
    for (int l = 0; l <= 50; ++l) {
      if (l < N) CHECK(T.at(N).counts[l] <= T.at(N).counts[l + 1]);
      if (N < 50) CHECK(T.at(N + 1).probability(l) <= T.at(N).probability(l));
    }
}

TEST_CASE("Table probabilities and validation") {
  const auto t = build_table(PermClass::Plain, 3);
  CHECK(t.probability(2) == mpq_class(5, 6));
  CHECK(t.probability(10) == 1);
  CHECK(t.cdf(1) == doctest::Approx(1.0 / 6));
  ExactCdfTable bad = t;
  bad.counts[2] = 0;
  CHECK_THROWS_AS(bad.check_invariants(), NumericalError);
  bad = t;
  bad.counts[3] = 7;
  CHECK_THROWS_AS(bad.check_invariants(), NumericalError);
}

TEST_CASE("Table file format round trip") {
  const auto t = build_table(PermClass::InvolutionInc, 20);
  std::stringstream ss;
  t.write(ss);
  std::string first;
  std::getline(ss, first);
  CHECK(first == "INVOLUTION_INC 20");
  ss.seekg(0);
  const auto back = ExactCdfTable::read(ss);
  CHECK(back.cls == t.cls);
  CHECK(back.N == 20);
  CHECK(back.counts == t.counts);
  std::stringstream bad1("PLAIN 3\n0 0\n1 1\n2 x\n3 6\n");
  CHECK_THROWS_AS(ExactCdfTable::read(bad1), IoError);
  std::stringstream bad2("PLAIN 3\n0 0\n1 1\n2 5\n3 7\n");
  CHECK_THROWS_AS(ExactCdfTable::read(bad2), IoError);
  std::stringstream bad3("SQUARE 3\n");
  CHECK_THROWS_AS(ExactCdfTable::read(bad3), IoError);
}

TEST_CASE("Cached tables") {
  const auto dir = std::filesystem::temp_directory_path() / ("lislab-enum-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  ::setenv("LISLAB_CACHE_DIR", dir.c_str(), 1);
  const auto a = cached_tables(PermClass::InvolutionDec, {10, 12}, true, 1);
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.path().extension() == ".tbl";
  CHECK(files == 2);
  const auto b = cached_tables(PermClass::InvolutionDec, {12, 10}, true, 1);
  CHECK(a.at(12).counts == b.at(12).counts);
  // corrupt entries are rebuilt
  for (const auto& e : std::filesystem::directory_iterator(dir)) io::atomic_write(e.path(), "garbage");
  const auto c = cached_tables(PermClass::InvolutionDec, {10}, true, 1);
  CHECK(c.at(10).counts == oracle_bruteforce(10, PermClass::InvolutionDec).counts);
  const auto d = cached_tables(PermClass::InvolutionDec, {10}, false, 1);
  CHECK(d.at(10).counts == c.at(10).counts);
  std::filesystem::remove_all(dir);
}

TEST_CASE("Modular arithmetic") {
  const auto primes = word_primes(4);
  REQUIRE(primes.size() == 4);
  CHECK(primes[0] < (1ULL << 62));
  CHECK(primes[0] > primes[1]);
  std::mt19937_64 gen(1);
  for (auto p : primes) {
    ModP::Scope scope(p);
    CHECK(ModP::mod() == p);
    for (int i = 0; i < 200; ++i) {
      const unsigned long long x = gen() % p, y = gen() % p;
      const ModP a = ModP::from_u64(x), b = ModP::from_u64(y);
      CHECK((a * b).value() == static_cast<unsigned long long>((unsigned __int128)x * y % p));
      CHECK((a + b).value() == (x + y) % p);
      CHECK((a - b).value() == (x + p - y) % p);
      if (y) CHECK(((a / b) * b).value() == x);
    }
    CHECK(ModP(-1).value() == p - 1);
    CHECK(ModP(3).pow(p - 1).value() == 1);
    CHECK_THROWS_AS(ModP(0).inverse(), NumericalError);
    std::vector<ModP> u(50), v(50);
    ModP ref(0);
    for (int i = 0; i < 50; ++i) {
      u[i] = ModP::from_u64(gen() % p);
      v[i] = ModP::from_u64(gen() % p);
    }
    for (int i = 0; i < 50; ++i) ref += u[i] * v[49 - i];
    CHECK(ModP::dot_rev(u.data(), v.data() + 49, 50) == ref);
  }
  CHECK_THROWS_AS(ModP::Scope(10), ArgumentError);
  mpz_class x("123456789012345678901234567890123456789");
  std::vector<std::uint64_t> res;
  for (auto p : word_primes(3)) res.push_back(mpz_class(x % mpz_class(std::to_string(p))).get_ui());
  CHECK(crt_reconstruct(res, word_primes(3)) == x);
}

TEST_CASE("Power-series helpers") {
  const auto r = series::reciprocals<mpq_class>(6);
  CHECK(r[5] == mpq_class(1, 5));
  {
    ModP::Scope scope(word_primes(1)[0]);
    const auto rm = series::reciprocals<ModP>(10);
    for (int i = 1; i <= 10; ++i) CHECK((rm[i] * ModP(i)).value() == 1);
  }
  std::vector<mpq_class> h{0, 1};
  const auto e = series::exp_series(h, 6);
  CHECK(e[6] == mpq_class(1, 720));
  std::vector<mpq_class> h2{0, 0, 1};
  const auto e2 = series::exp_series(h2, 6);
  CHECK(e2[4] == mpq_class(1, 2));
  CHECK(e2[5] == 0);
  CHECK_THROWS_AS(series::exp_series(std::vector<mpq_class>{1, 1}, 3), ArgumentError);
}
