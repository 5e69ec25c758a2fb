using Shop.Data;
using Shop.Data.Entities;

namespace Shop.Business
{
    public class CartService
    {
        private OrderService orders = new OrderService();
        private CartRepository carts = new CartRepository();

        public int Checkout(int customerId)
        {
            Cart cart = carts.Load(customerId);
            Order order = orders.CreateOrder(customerId, cart.Sku, cart.Quantity);
            orders.PlaceOrder(order);
            carts.Clear(customerId);
            return order.Id;
        }
    }
}
