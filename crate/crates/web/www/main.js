import init, { circuitPlots, contactExplorer, fitSynthetic } from "./pkg/tribo_eis_web.js";

const num = (sec, name) => Number(sec.querySelector(`[name="${name}"]`).value);
const str = (sec, name) => sec.querySelector(`[name="${name}"]`).value;

function show(sec, fn) {
  const err = sec.querySelector(".error");
  try {
    err.textContent = "";
    const out = fn();
    sec.querySelector(".plots").innerHTML = out.bode + out.nyquist;
    out.free();
  } catch (e) {
    err.textContent = String(e);
  }
}

function circuit() {
  const s = document.getElementById("circuit");
  show(s, () => circuitPlots(str(s, "model"), num(s, "r1"), num(s, "c1"), num(s, "extra"), num(s, "lo"), num(s, "hi")));
}

function contact() {
  const s = document.getElementById("contact");
  const h = 10 ** num(s, "logh");
  const alpha = 10 ** num(s, "loga");
  show(s, () => {
    const c = contactExplorer(h, alpha, num(s, "radius"), num(s, "load"), num(s, "modulus"), num(s, "eps"), num(s, "r0"));
    const r = c.rOhm < 0 ? "open circuit" : c.rOhm.toExponential(4) + " ohm";
    s.querySelector("pre").textContent = [
      `h = ${h.toPrecision(4)} nm, alpha = ${alpha.toExponential(2)}`,
      `Hertz radius = ${(c.hertzRadiusM * 1e6).toFixed(2)} um`,
      `C (Hertz zone) = ${c.cHertzF.toExponential(4)} F`,
      `C (surround) = ${c.cSurroundF.toExponential(4)} F`,
      `R = ${r}`,
      c.cutoffHz > 0 ? `cutoff = ${c.cutoffHz.toExponential(3)} Hz` : "",
    ].join("\n");
    return c;
  });
}

function fit() {
  const s = document.getElementById("fit");
  show(s, () => {
    const f = fitSynthetic(num(s, "r"), num(s, "c"), num(s, "sigma"), num(s, "seed"), str(s, "model"));
    s.querySelector("pre").textContent = f.summary;
    return f;
  });
}

await init();
for (const [id, fn] of [["circuit", circuit], ["contact", contact]]) {
  document.getElementById(id).addEventListener("input", fn);
  fn();
}
document.querySelector("#fit button").addEventListener("click", fit);
fit();
