// Copyright 2023 Ant Group Co., Ltd.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>

#include "wvss/errors.h"
#include "wvss/wvss.h"

namespace py = pybind11;
using namespace wvss;

namespace {

Nat ToNat(const py::int_& x) {
  WVSS_ENFORCE(x >= py::int_(0), ErrorCode::kBadInput, "negative integer");
  return Nat(py::str(x).cast<std::string>(), 10);
}

py::int_ FromNat(const Nat& x) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(x.get_str(10).c_str(), nullptr, 10));
}

std::unique_ptr<Rng> MakeRng(const std::optional<std::string>& seed) {
  if (!seed) return std::make_unique<SystemRng>();
  return std::make_unique<SeededRng>(*seed);
}

py::bytes ToBytes(const std::vector<uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

DealPublic LoadDeal(const py::bytes& b) {
  std::string s = b;
  return DealPublic::Deserialize(
      std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Verifiable weighted ramp secret sharing";

  // Raised with args (message, error code name).
  static py::exception<Error> exc(m, "WvssError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(exc.ptr(), py::make_tuple(e.what(), ErrorCodeName(e.code())).ptr());
    }
  });

  m.def("group_order", [] { return FromNat(Scalar::Modulus()); });
  m.def("weight_cap", &WeightCap);

  py::class_<WvssParams>(m, "Params")
      .def_property_readonly("n", &WvssParams::n)
      .def_readonly("m", &WvssParams::m)
      .def_readonly("t_priv", &WvssParams::t_priv)
      .def_readonly("T_rec", &WvssParams::T_rec)
      .def_readonly("amplification", &WvssParams::amplification)
      .def_readonly("weights", &WvssParams::weights)
      .def_readonly("lambda_sec", &WvssParams::lambda_sec)
      .def_property_readonly("total_bits", &WvssParams::total_bits)
      .def_property_readonly("primes",
                             [](const WvssParams& p) {
                               py::list out;
                               for (const auto& s : p.shares) out.append(FromNat(s.p));
                               return out;
                             })
      .def_property_readonly("share_parties",
                             [](const WvssParams& p) {
                               std::vector<uint32_t> out;
                               for (const auto& s : p.shares) out.push_back(s.party);
                               return out;
                             })
      .def("share_ids_of", &WvssParams::ShareIdsOf)
      .def("to_json", &WvssParams::ToJson)
      .def_static("from_json", [](const std::string& s) {
        WvssParams p = WvssParams::FromJson(s);
        CheckParams(p);
        return p;
      });

  m.def(
      "derive_params",
      [](std::vector<uint32_t> weights, unsigned lambda_sec, double ratio_T, bool virtualize,
         std::optional<std::string> seed) {
        DeriveOptions opt;
        opt.lambda_sec = lambda_sec;
        opt.ratio_T = ratio_T;
        opt.virtualize = virtualize;
        auto rng = MakeRng(seed);
        py::gil_scoped_release nogil;
        return DeriveParams(weights, opt, *rng);
      },
      py::arg("weights"), py::arg("lambda_sec") = 128, py::arg("ratio_T") = 1.0,
      py::arg("virtualize") = false, py::arg("seed") = py::none());

  py::class_<ShareOpening>(m, "Opening")
      .def_readonly("index", &ShareOpening::index)
      .def_property_readonly("s", [](const ShareOpening& o) { return FromNat(o.s); })
      .def("__repr__", [](const ShareOpening& o) {
        return "Opening(index=" + std::to_string(o.index) + ")";
      });

  m.def("openings_to_json",
        [](const std::vector<ShareOpening>& o) { return OpeningsToJson(o); });
  m.def("openings_from_json", &OpeningsFromJson);

  m.def(
      "share",
      [](const WvssParams& params, const py::int_& secret, std::optional<std::string> seed) {
        Nat s = ToNat(secret);
        WVSS_ENFORCE(s < Scalar::Modulus(), ErrorCode::kBadInput,
                     "secret must be below the group order");
        auto rng = MakeRng(seed);
        Deal d;
        {
          py::gil_scoped_release nogil;
          d = Share(params, Scalar::FromNat(s), *rng);
        }
        return py::make_tuple(ToBytes(d.pub.Serialize()), d.openings);
      },
      py::arg("params"), py::arg("secret"), py::arg("seed") = py::none(),
      "Returns (deal bytes, openings for shares 1..n).");

  m.def(
      "verify",
      [](const WvssParams& params, const py::bytes& deal,
         const std::vector<ShareOpening>& mine) {
        DealPublic pub = LoadDeal(deal);
        py::gil_scoped_release nogil;
        return std::string(DealVerdictName(VerifyDeal(params, pub, mine)));
      },
      py::arg("params"), py::arg("deal"), py::arg("openings") = std::vector<ShareOpening>{});

  m.def(
      "reconstruct",
      [](const WvssParams& params, const py::bytes& deal,
         const std::vector<ShareOpening>& shares) -> py::object {
        DealPublic pub = LoadDeal(deal);
        std::optional<Scalar> s;
        {
          py::gil_scoped_release nogil;
          s = Reconstruct(params, pub, shares);
        }
        if (!s) return py::none();
        return FromNat(s->ToNat());
      },
      py::arg("params"), py::arg("deal"), py::arg("openings"));

  m.def(
      "secrecy_distance",
      [](const py::int_& p0, const std::vector<py::int_>& primes, uint64_t lifts,
         const py::int_& s, const py::int_& s2, const std::vector<uint32_t>& unauthorized) {
        std::vector<Nat> ps;
        for (const auto& p : primes) ps.push_back(ToNat(p));
        return SecrecyDistance(ToNat(p0), ps, lifts, ToNat(s), ToNat(s2), unauthorized);
      },
      py::arg("p0"), py::arg("primes"), py::arg("lifts"), py::arg("s"), py::arg("s2"),
      py::arg("unauthorized"));
}
