import { HttpApiClient } from "./api.js";
import { TopicNavigator } from "./navigator.js";

const container = document.getElementById("app");
if (container === null) {
  throw new Error("missing #app container");
}
const navigator_ = new TopicNavigator(container, new HttpApiClient(""));
void navigator_.start("ROOT");
