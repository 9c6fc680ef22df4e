import { createClient } from "./api";
import { mountWorkbench } from "./app";
import "./style.css";

const root = document.querySelector<HTMLElement>("#app");
if (!root) {
  throw new Error("missing #app mount point");
}
mountWorkbench(root, createClient(""));
