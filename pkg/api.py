"""
Γ^(m) 直線化ツールキット - Web API
CLI と同じ計算を HTTP で提供する FastAPI

起動: ./run.sh serve
"""

from collections.abc import Callable
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from combinatorics import count_good_compositions, dominance_compare, good_compositions
from config import DEFAULT_PORT, load_guards
from data_loader import parse_composition, parse_pair, parse_partition
from errors import GuardExceededError
from gamma_ring import BasisKey, coefficient, expand_e, psi, straighten_direct, straighten_product
from rep_theory import Flavor, canonical_summand, describe_module, expand_module, indecomposable_label

app = FastAPI(
    title="Γ^(m) 直線化API",
    description="h_α e_β の基底展開と関連する組合せ係数を計算するAPI",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


class ExpandERequest(BaseModel):
    """e_n 展開リクエスト"""
    m: int
    n: int


class StraightenRequest(BaseModel):
    """直線化リクエスト（h, e は "4,3,2" 形式、空文字列は ∅）"""
    m: int
    h: str = ""
    e: str = ""
    via: str = "direct"


class CoefficientRequest(BaseModel):
    """係数リクエスト"""
    m: int
    h: str = ""
    e: str = ""
    target: str


class CountRequest(BaseModel):
    """c_λ^(m) リクエスト"""
    m: int
    lam: str = ""
    list_witnesses: bool = False


class ModuleRequest(BaseModel):
    """加群の組 (α|β) を受け取るリクエスト"""
    p: int
    alpha: str = ""
    beta: str = ""
    flavor: str = Flavor.SIGNED_YOUNG.value


class DominanceRequest(BaseModel):
    """支配順序リクエスト"""
    p: int
    left: str
    right: str


class LabelRequest(BaseModel):
    """直既約ラベルリクエスト"""
    a: int
    b: int
    p: int


def _call(fn: Callable[[], Any]) -> Any:
    """計算を実行し、入力エラーは 400、ガード超過は 413 に変換する"""
    try:
        return fn()
    except GuardExceededError as e:
        raise HTTPException(status_code=413, detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.get("/")
def root():
    """ヘルスチェック"""
    return {"status": "ok", "service": "Γ^(m) 直線化API"}


@app.post("/expand-e")
def run_expand_e(request: ExpandERequest):
    return _call(lambda: expand_e(request.n, request.m).to_dict())


@app.post("/straighten")
def run_straighten(request: StraightenRequest):
    def compute():
        if request.via not in ("direct", "product"):
            raise ValueError(f"via は direct か product を指定してください: {request.via}")
        implementation = straighten_product if request.via == "product" else straighten_direct
        return implementation(parse_composition(request.h), parse_composition(request.e), request.m).to_dict()
    return _call(compute)


@app.post("/coefficient")
def run_coefficient(request: CoefficientRequest):
    def compute():
        target = parse_pair(request.target, request.m)
        element = straighten_direct(parse_composition(request.h), parse_composition(request.e), request.m)
        value = coefficient(element, BasisKey(target.first, target.second, request.m))
        return {"m": request.m, "target": str(target), "coeff": str(value)}
    return _call(compute)


@app.post("/count-cm")
def run_count_cm(request: CountRequest):
    def compute():
        lam = parse_partition(request.lam)
        result = {"lambda": list(lam), "m": request.m, "count": str(count_good_compositions(lam, request.m))}
        if request.list_witnesses:
            witnesses = good_compositions(lam, request.m, load_guards().enumeration)
            result["witnesses"] = [list(w) for w in witnesses]
        return result
    return _call(compute)


@app.post("/psi")
def run_psi(request: StraightenRequest):
    return _call(lambda: psi(
        straighten_direct(parse_composition(request.h), parse_composition(request.e), request.m)
    ).to_dict())


@app.post("/canonical")
def run_canonical(request: ModuleRequest):
    def compute():
        pair = canonical_summand(parse_composition(request.alpha), parse_composition(request.beta), request.p)
        return {"pair": str(pair), "first": list(pair.first), "second": list(pair.second), "modulus": request.p}
    return _call(compute)


@app.post("/dominance")
def run_dominance(request: DominanceRequest):
    def compute():
        left, right = parse_pair(request.left, request.p), parse_pair(request.right, request.p)
        relation = dominance_compare(left, right, request.p)
        return {"left": str(left), "right": str(right), "p": request.p, "relation": relation.value}
    return _call(compute)


@app.post("/module")
def run_module(request: ModuleRequest):
    def compute():
        alpha, beta = parse_composition(request.alpha), parse_composition(request.beta)
        flavor = Flavor(request.flavor)
        expansion = expand_module(alpha, beta, request.p, flavor)
        return {"module": describe_module(alpha, beta, flavor), "text": expansion.to_text(), **expansion.to_dict()}
    return _call(compute)


@app.post("/label")
def run_label(request: LabelRequest):
    def compute():
        pair = indecomposable_label(request.a, request.b, request.p)
        return {"a": request.a, "b": request.b, "p": request.p, "pair": None if pair is None else str(pair)}
    return _call(compute)


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=DEFAULT_PORT)
